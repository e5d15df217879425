#include "em/dataset.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "em/errors.hpp"

namespace em {

const char* to_string(FaceType face) { return face == FaceType::Wide ? "wide" : "narrow"; }

FaceType face_type_from_string(const std::string& name) {
    std::string key;
    for (char c : name) key += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (key == "wide" || key == "w") return FaceType::Wide;
    if (key == "narrow" || key == "n") return FaceType::Narrow;
    throw ParseError("unknown face type '" + name + "'");
}

std::string ExperimentRecord::key() const { return name + "." + to_string(face_type); }

void ExperimentRecord::validate() const {
    if (name.empty()) throw InvariantViolation("experiment record: empty name");
    for (double p : {p_g, p_a_given_g, p_b, p_a_given_b, p_t, p_a}) {
        if (!(p >= 0.0 && p <= 1.0)) {
            throw InvariantViolation("experiment record '" + name + "': probability outside [0,1]");
        }
    }
    // The tables carry two decimals, so consistency is only expected to a
    // rounding margin.
    if (std::abs(p_g + p_b - 1.0) > 0.01) {
        throw InvariantViolation("experiment record '" + name + "': P(G) + P(B) != 1");
    }
    if (std::abs(p_t - (p_g * p_a_given_g + p_b * p_a_given_b)) > 0.01) {
        throw InvariantViolation("experiment record '" + name +
                                 "': P_T is inconsistent with the conditionals");
    }
}

const std::vector<ExperimentRecord>& bundled_experiments() {
    // Observed values exactly as reported, two decimals. The published
    // model rows are attached to the narrow-face records. Two of them need
    // care: the busemeyer_2009 row is column-scrambled in the source table
    // and is stored here in the order that makes it self-consistent; the
    // wang_busemeyer_exp2 row prints P(A|G)=0.3384, which contradicts its
    // own P_T and Dis (0.3803 is the consistent value) and is stored as
    // printed -- the calibration target derivation works around it.
    static const std::vector<ExperimentRecord> records = [] {
        std::vector<ExperimentRecord> r = {
            {"townsend_2000", FaceType::Wide, 0.84, 0.35, 0.16, 0.52, 0.37, 0.39, std::nullopt},
            {"townsend_2000", FaceType::Narrow, 0.17, 0.41, 0.83, 0.63, 0.59, 0.69,
             EmRow{0.394, 0.606, 0.57, 0.6589, 0.0889}},
            {"busemeyer_2009", FaceType::Wide, 0.80, 0.37, 0.20, 0.53, 0.40, 0.39, std::nullopt},
            {"busemeyer_2009", FaceType::Narrow, 0.20, 0.45, 0.80, 0.64, 0.60, 0.69,
             EmRow{0.4019, 0.5981, 0.5588, 0.6404, 0.0816}},
            {"wang_busemeyer_exp1", FaceType::Wide, 0.78, 0.39, 0.22, 0.52, 0.42, 0.42,
             std::nullopt},
            {"wang_busemeyer_exp1", FaceType::Narrow, 0.21, 0.41, 0.79, 0.58, 0.54, 0.59,
             EmRow{0.3840, 0.6160, 0.5673, 0.6432, 0.0759}},
            {"wang_busemeyer_exp2", FaceType::Wide, 0.78, 0.33, 0.22, 0.53, 0.37, 0.37,
             std::nullopt},
            {"wang_busemeyer_exp2", FaceType::Narrow, 0.24, 0.37, 0.76, 0.61, 0.55, 0.60,
             EmRow{0.3384, 0.6197, 0.5622, 0.63, 0.0678}},
            {"wang_busemeyer_exp3", FaceType::Wide, 0.77, 0.34, 0.23, 0.58, 0.40, 0.39,
             std::nullopt},
            {"wang_busemeyer_exp3", FaceType::Narrow, 0.24, 0.33, 0.76, 0.66, 0.58, 0.62,
             EmRow{0.3384, 0.6616, 0.5841, 0.6436, 0.0596}},
            {"average", FaceType::Wide, 0.79, 0.36, 0.21, 0.54, 0.39, 0.39, std::nullopt},
            {"average", FaceType::Narrow, 0.21, 0.39, 0.79, 0.62, 0.57, 0.64,
             EmRow{0.3797, 0.6203, 0.5685, 0.6432, 0.0747}},
        };
        for (const auto& rec : r) rec.validate();
        return r;
    }();
    return records;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, ',')) {
        // trim surrounding whitespace
        const auto begin = field.find_first_not_of(" \t\r");
        const auto end = field.find_last_not_of(" \t\r");
        fields.push_back(begin == std::string::npos ? "" : field.substr(begin, end - begin + 1));
    }
    if (!line.empty() && line.back() == ',') fields.push_back("");
    return fields;
}

double parse_prob(const std::string& text, const std::string& where) {
    std::size_t used = 0;
    double value = 0.0;
    try {
        value = std::stod(text, &used);
    } catch (const std::exception&) {
        throw ParseError(where + ": '" + text + "' is not a number");
    }
    if (used != text.size()) throw ParseError(where + ": trailing characters in '" + text + "'");
    return value;
}

}  // namespace

std::vector<ExperimentRecord> load_experiments_csv(std::istream& in,
                                                   const std::string& source_name) {
    static const std::vector<std::string> expected = {
        "name", "face_type", "p_g", "p_a_given_g", "p_b", "p_a_given_b", "p_t", "p_a"};

    std::string line;
    if (!std::getline(in, line)) throw ParseError(source_name + ": empty input");
    const auto header = split_csv_line(line);
    if (header != expected) {
        for (std::size_t i = 0; i < expected.size(); ++i) {
            if (i >= header.size() || header[i] != expected[i]) {
                throw ParseError(source_name + ":1: column " + std::to_string(i + 1) +
                                 " must be '" + expected[i] + "'" +
                                 (i < header.size() ? ", got '" + header[i] + "'" : ""));
            }
        }
        throw ParseError(source_name + ":1: bad header");
    }

    std::vector<ExperimentRecord> records;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        const auto fields = split_csv_line(line);
        const std::string where = source_name + ":" + std::to_string(lineno);
        if (fields.size() != expected.size()) {
            throw ParseError(where + ": expected " + std::to_string(expected.size()) +
                             " fields, got " + std::to_string(fields.size()));
        }
        ExperimentRecord rec;
        rec.name = fields[0];
        rec.face_type = face_type_from_string(fields[1]);
        rec.p_g = parse_prob(fields[2], where + " (p_g)");
        rec.p_a_given_g = parse_prob(fields[3], where + " (p_a_given_g)");
        rec.p_b = parse_prob(fields[4], where + " (p_b)");
        rec.p_a_given_b = parse_prob(fields[5], where + " (p_a_given_b)");
        rec.p_t = parse_prob(fields[6], where + " (p_t)");
        rec.p_a = parse_prob(fields[7], where + " (p_a)");
        rec.validate();
        records.push_back(std::move(rec));
    }
    return records;
}

std::vector<ExperimentRecord> load_experiments(DataSource source, const std::string& path) {
    if (source == DataSource::Bundled) return bundled_experiments();
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open experiments file '" + path + "'");
    return load_experiments_csv(in, path);
}

}  // namespace em
