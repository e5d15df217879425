#include "em/config.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "em/errors.hpp"

namespace em {

const char* to_string(FitScope scope) {
    return scope == FitScope::PerExperiment ? "per-experiment" : "shared";
}

const char* to_string(FitTargetKind kind) {
    return kind == FitTargetKind::EmPublished ? "em-published" : "observed";
}

FitScope fit_scope_from_string(const std::string& name) {
    if (name == "per-experiment" || name == "per") return FitScope::PerExperiment;
    if (name == "shared") return FitScope::Shared;
    throw ParseError("unknown fit scope '" + name + "'");
}

FitTargetKind fit_target_from_string(const std::string& name) {
    if (name == "em-published" || name == "em" || name == "published") {
        return FitTargetKind::EmPublished;
    }
    if (name == "observed" || name == "obs") return FitTargetKind::Observed;
    throw ParseError("unknown fit target '" + name + "'");
}

void RunConfig::validate() const {
    if (!(t >= 0.0) || !std::isfinite(t)) throw OutOfRange("config: t must be >= 0");
    if (rate_overrides) {
        if (!(rate_overrides->first >= 0.0) || !(rate_overrides->second >= 0.0)) {
            throw OutOfRange("config: rate overrides must be nonnegative");
        }
    }
}

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

}  // namespace

ConfigDoc ConfigDoc::parse(std::istream& in, const std::string& source_name) {
    ConfigDoc doc;
    std::string line;
    std::string section;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string where = source_name + ":" + std::to_string(lineno);
        std::string text = trim(line);
        if (text.empty() || text[0] == '#') continue;
        if (text.front() == '[') {
            if (text.back() != ']') throw ParseError(where + ": unterminated section header");
            section = trim(text.substr(1, text.size() - 2));
            if (section.empty()) throw ParseError(where + ": empty section name");
            doc.sections_[section];
            continue;
        }
        const auto eq = text.find('=');
        if (eq == std::string::npos) throw ParseError(where + ": expected 'key = value'");
        const std::string key = trim(text.substr(0, eq));
        const std::string raw = trim(text.substr(eq + 1));
        if (key.empty()) throw ParseError(where + ": empty key");
        if (raw.empty()) throw ParseError(where + ": empty value for '" + key + "'");
        Value value;
        if (raw == "true") {
            value = true;
        } else if (raw == "false") {
            value = false;
        } else if (raw.front() == '"') {
            if (raw.size() < 2 || raw.back() != '"') {
                throw ParseError(where + ": unterminated string");
            }
            value = raw.substr(1, raw.size() - 2);
        } else {
            std::size_t used = 0;
            double num = 0.0;
            try {
                num = std::stod(raw, &used);
            } catch (const std::exception&) {
                throw ParseError(where + ": cannot parse value '" + raw + "'");
            }
            if (used != raw.size()) throw ParseError(where + ": cannot parse value '" + raw + "'");
            value = num;
        }
        doc.sections_[section][key] = std::move(value);
    }
    return doc;
}

ConfigDoc ConfigDoc::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open config file '" + path + "'");
    return parse(in, path);
}

void ConfigDoc::set(const std::string& section, const std::string& key, Value value) {
    sections_[section][key] = std::move(value);
}

const ConfigDoc::Value* ConfigDoc::find(const std::string& section, const std::string& key) const {
    auto sec = sections_.find(section);
    if (sec == sections_.end()) return nullptr;
    auto it = sec->second.find(key);
    return it == sec->second.end() ? nullptr : &it->second;
}

std::optional<double> ConfigDoc::find_number(const std::string& section,
                                             const std::string& key) const {
    const Value* v = find(section, key);
    if (!v) return std::nullopt;
    if (const double* num = std::get_if<double>(v)) return *num;
    throw ParseError("config value " + section + "." + key + " is not a number");
}

void ConfigDoc::write(std::ostream& out) const {
    bool first = true;
    for (const auto& [section, entries] : sections_) {
        if (!first) out << "\n";
        first = false;
        if (!section.empty()) out << "[" << section << "]\n";
        for (const auto& [key, value] : entries) {
            out << key << " = ";
            if (const double* num = std::get_if<double>(&value)) {
                char buf[32];
                std::snprintf(buf, sizeof buf, "%.17g", *num);
                out << buf;
            } else if (const bool* flag = std::get_if<bool>(&value)) {
                out << (*flag ? "true" : "false");
            } else {
                out << '"' << std::get<std::string>(value) << '"';
            }
            out << "\n";
        }
    }
}

void ConfigDoc::write_file(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write config file '" + path + "'");
    write(out);
}

void apply_config(const ConfigDoc& doc, RunConfig& config) {
    if (auto t = doc.find_number("run", "t")) config.t = *t;
    if (const auto* v = doc.find("run", "generator_mode")) {
        config.generator_mode = generator_mode_from_string(std::get<std::string>(*v));
    }
    if (const auto* v = doc.find("run", "entropy")) {
        config.entropy_method = entropy_method_from_string(std::get<std::string>(*v));
    }
    if (const auto* v = doc.find("run", "fit_scope")) {
        config.fit_scope = fit_scope_from_string(std::get<std::string>(*v));
    }
    if (const auto* v = doc.find("run", "fit_target")) {
        config.fit_target = fit_target_from_string(std::get<std::string>(*v));
    }
    for (const auto& [section, entries] : doc.sections()) {
        constexpr const char* prefix = "rates.";
        if (section.rfind(prefix, 0) != 0) continue;
        const std::string record_key = section.substr(std::string(prefix).size());
        const auto k_r = doc.find_number(section, "k_r");
        const auto k_w = doc.find_number(section, "k_w");
        if (!k_r || !k_w) {
            throw ParseError("config section [" + section + "] needs both k_r and k_w");
        }
        config.per_record_rates[record_key] = {*k_r, *k_w};
    }
    config.validate();
}

}  // namespace em
