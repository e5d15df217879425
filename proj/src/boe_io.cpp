#include "em/boe_io.hpp"

#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <vector>

#include "em/errors.hpp"

namespace em {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string part;
    std::istringstream ss(s);
    while (std::getline(ss, part, sep)) parts.push_back(trim(part));
    return parts;
}

}  // namespace

MassFunction parse_boe(std::istream& in, const std::string& source_name) {
    std::optional<FrameOfDiscernment> frame;
    std::vector<std::pair<std::vector<std::string>, double>> entries;

    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string where = source_name + ":" + std::to_string(lineno);
        const std::string text = trim(line);
        if (text.empty() || text[0] == '#') continue;

        if (!frame) {
            constexpr const char* kw = "frame:";
            if (text.rfind(kw, 0) != 0) {
                throw ParseError(where + ": expected 'frame: label1,label2,...' first");
            }
            auto labels = split(text.substr(std::string(kw).size()), ',');
            try {
                frame.emplace(std::move(labels));
            } catch (const Error& e) {
                throw ParseError(where + ": " + e.what());
            }
            continue;
        }

        const auto colon = text.find(':');
        if (colon == std::string::npos) {
            throw ParseError(where + ": expected 'members : mass'");
        }
        auto members = split(text.substr(0, colon), '|');
        const std::string mass_text = trim(text.substr(colon + 1));
        double mass = 0.0;
        std::size_t used = 0;
        try {
            mass = std::stod(mass_text, &used);
        } catch (const std::exception&) {
            throw ParseError(where + ": '" + mass_text + "' is not a number");
        }
        if (used != mass_text.size()) {
            throw ParseError(where + ": trailing characters after mass");
        }
        entries.emplace_back(std::move(members), mass);
    }

    if (!frame) throw ParseError(source_name + ": no frame declaration found");
    return make_mass(*frame, entries);
}

MassFunction parse_boe_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open BOE file '" + path + "'");
    return parse_boe(in, path);
}

void write_boe(std::ostream& out, const MassFunction& m) {
    out << "frame: ";
    const auto& labels = m.frame().labels();
    for (std::size_t i = 0; i < labels.size(); ++i) {
        out << (i ? "," : "") << labels[i];
    }
    out << "\n";
    for (const auto& [bits, mass] : m.assignments()) {
        const auto members = FocalSet::from_bits(bits).members(m.frame());
        for (std::size_t i = 0; i < members.size(); ++i) {
            out << (i ? "|" : "") << members[i];
        }
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.17g", mass);
        out << " : " << buf << "\n";
    }
}

}  // namespace em
