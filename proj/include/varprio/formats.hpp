#pragma once

// External file formats. All writers are deterministic byte-for-byte for
// identical inputs: fixed orders, fixed separators (tabs), '\n' line ends,
// fixed number formatting. Writers emit text; file placement and atomic
// replacement live in io helpers at the bottom.
//
//   facts:       OP <tab> entity <tab> condition
//   tables:      SET <tab> option <tab> value <tab> entity   (core: CORE_*, "-")
//   selections:  rule <tab> violation <tab> entity <tab> lit[,lit]
//   config table: header of option names, then T/F rows
//   ranked table: "rank score <options...>" header, then rows
//   feature model: one constraint per line, optional "@options ..." header,
//                  '#' comments
//   bugs:        id ":" lit[, lit]

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "varprio/configspace.hpp"
#include "varprio/errors.hpp"
#include "varprio/interactions.hpp"
#include "varprio/metrics.hpp"
#include "varprio/ranking.hpp"
#include "varprio/records.hpp"
#include "varprio/selection_tables.hpp"

namespace varprio {

// --- small text helpers ------------------------------------------------------

inline std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : text) {
        if (c == sep) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(cur);
    return parts;
}

inline std::string trim(const std::string& s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r')) ++b;
    while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) --e;
    return s.substr(b, e - b);
}

inline std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> out = split(text, '\n');
    if (!out.empty() && out.back().empty()) out.pop_back();
    return out;
}

inline std::string format_fixed(double x, int digits = 4) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", digits, x);
    return buf;
}

// Whole-number scores print without a fraction; everything else gets 4 digits.
inline std::string format_score(double x) {
    long long i = static_cast<long long>(x);
    if (static_cast<double>(i) == x) return std::to_string(i);
    return format_fixed(x, 4);
}

inline Literal parse_literal(const std::string& text) {
    std::string t = trim(text);
    std::size_t eq = t.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 2 != t.size() ||
        (t[eq + 1] != 'T' && t[eq + 1] != 'F')) {
        throw ParseError("malformed literal '" + text + "' (expected OPTION=T or OPTION=F)");
    }
    return {t.substr(0, eq), t[eq + 1] == 'T'};
}

inline std::string render_literals(const std::vector<Literal>& lits) {
    std::string out;
    for (std::size_t i = 0; i < lits.size(); ++i) {
        if (i > 0) out += ',';
        out += to_string(lits[i]);
    }
    return out;
}

// --- facts -------------------------------------------------------------------

inline std::string render_facts(const RecordList& records) {
    std::string out;
    for (const auto& r : records) {
        std::string op = to_string(r.op);
        if (r.op == OpKind::Assign && r.null_assign) op = "ASSIGN_NULL";
        out += op;
        out += '\t';
        out += to_string(r.entity);
        out += '\t';
        out += to_string(r.condition);
        out += '\n';
    }
    return out;
}

// --- selection tables --------------------------------------------------------

inline std::string render_tables(const SelectionTables& tables) {
    std::string out;
    const auto& opts = tables.options();
    static const SetKind kSets[] = {SetKind::Alpha, SetKind::Beta, SetKind::Gamma,
                                    SetKind::Delta};
    for (std::size_t o = 0; o < opts.size(); ++o) {
        for (bool value : {true, false}) {
            for (SetKind set : kSets) {
                for (const auto& e : tables.cell(set, o, value).members) {
                    out += to_string(set);
                    out += '\t';
                    out += opts[o];
                    out += '\t';
                    out += value ? "T" : "F";
                    out += '\t';
                    out += to_string(e);
                    out += '\n';
                }
            }
        }
    }
    static const char* kCoreNames[] = {"CORE_A", "CORE_B", "CORE_GAMMA", "CORE_DELTA"};
    for (SetKind set : kSets) {
        for (const auto& e : tables.core(set).members) {
            out += kCoreNames[static_cast<std::size_t>(set)];
            out += "\t-\t-\t";
            out += to_string(e);
            out += '\n';
        }
    }
    return out;
}

// Polarity (active value per option) recovered from a rendered tables file.
inline std::map<std::string, bool> read_polarity(const std::string& text) {
    std::map<std::string, std::pair<bool, bool>> seen;  // option -> (has T, has F)
    for (const auto& raw : lines_of(text)) {
        if (raw.empty()) continue;
        std::vector<std::string> cols = split(raw, '\t');
        if (cols.size() != 4) throw ParseError("tables row needs 4 columns: " + raw);
        if (cols[0].rfind("CORE_", 0) == 0) continue;
        if (cols[2] == "T") {
            seen[cols[1]].first = true;
        } else if (cols[2] == "F") {
            seen[cols[1]].second = true;
        } else {
            throw ParseError("tables value column must be T or F: " + raw);
        }
    }
    std::map<std::string, bool> polarity;
    for (const auto& [opt, has] : seen) {
        polarity[opt] = has.second && !has.first ? false : true;
    }
    return polarity;
}

// --- suspicious selections ---------------------------------------------------

inline std::string render_selections(const std::vector<SuspiciousSelection>& sels) {
    std::string out;
    for (const auto& s : sels) {
        out += std::to_string(s.rule);
        out += '\t';
        out += to_string(s.violation);
        out += '\t';
        out += to_string(s.primary_witness());
        out += '\t';
        out += render_literals(s.literals);
        out += '\n';
    }
    return out;
}

inline std::vector<SuspiciousSelection> read_selections(const std::string& text) {
    std::vector<SuspiciousSelection> out;
    for (const auto& raw : lines_of(text)) {
        if (raw.empty()) continue;
        std::vector<std::string> cols = split(raw, '\t');
        if (cols.size() != 4) throw ParseError("selections row needs 4 columns: " + raw);
        SuspiciousSelection s;
        try {
            s.rule = std::stoi(cols[0]);
        } catch (const std::exception&) {
            throw ParseError("selections rule column must be a number: " + raw);
        }
        auto v = violation_from_string(cols[1]);
        if (!v) throw ParseError("unknown violation '" + cols[1] + "'");
        s.violation = *v;
        std::size_t dot = cols[2].find('.');
        ProgramEntity e;
        if (dot == std::string::npos) {
            e.scope = kGlobalScope;
            e.name = cols[2];
        } else {
            e.scope = cols[2].substr(0, dot);
            e.name = cols[2].substr(dot + 1);
        }
        s.witnesses.push_back(e);
        for (const auto& lit : split(cols[3], ',')) s.literals.push_back(parse_literal(lit));
        std::sort(s.literals.begin(), s.literals.end());
        out.push_back(std::move(s));
    }
    return out;
}

// --- configuration tables ----------------------------------------------------

inline std::string render_config_table(const std::vector<std::string>& options,
                                       const std::vector<Configuration>& configs) {
    std::string out;
    for (std::size_t i = 0; i < options.size(); ++i) {
        if (i > 0) out += '\t';
        out += options[i];
    }
    out += '\n';
    for (const auto& c : configs) {
        if (c.options != options) {
            throw OptionMismatch("configuration table rows use mismatched option sets");
        }
        for (std::size_t i = 0; i < c.values.size(); ++i) {
            if (i > 0) out += '\t';
            out += c.values[i] ? "T" : "F";
        }
        out += '\n';
    }
    return out;
}

struct ConfigTable {
    std::vector<std::string> options;
    std::vector<Configuration> configs;
};

inline ConfigTable read_config_table(const std::string& text) {
    std::vector<std::string> lns = lines_of(text);
    if (lns.empty()) throw ParseError("configuration table is empty");
    ConfigTable table;
    table.options = split(lns[0], '\t');
    if (table.options.empty() || table.options[0].empty()) {
        throw ParseError("configuration table header has no options");
    }
    for (std::size_t i = 1; i < lns.size(); ++i) {
        if (lns[i].empty()) continue;
        std::vector<std::string> cols = split(lns[i], '\t');
        if (cols.size() != table.options.size()) {
            throw ParseError("configuration row " + std::to_string(i + 1) +
                             " has " + std::to_string(cols.size()) + " values, expected " +
                             std::to_string(table.options.size()));
        }
        Configuration c;
        c.options = table.options;
        for (const auto& v : cols) {
            if (v == "T") {
                c.values.push_back(true);
            } else if (v == "F") {
                c.values.push_back(false);
            } else {
                throw ParseError("configuration values must be T or F, got '" + v + "'");
            }
        }
        table.configs.push_back(std::move(c));
    }
    return table;
}

// --- ranked tables -----------------------------------------------------------

inline std::string render_ranked_table(const std::vector<RankedConfig>& ranked,
                                       const std::vector<std::string>& options) {
    std::string out = "rank\tscore";
    for (const auto& o : options) {
        out += '\t';
        out += o;
    }
    out += '\n';
    for (const auto& rc : ranked) {
        out += std::to_string(rc.rank);
        out += '\t';
        out += format_score(rc.score);
        for (bool v : rc.config.values) {
            out += '\t';
            out += v ? "T" : "F";
        }
        out += '\n';
    }
    return out;
}

struct RankedTable {
    std::vector<std::string> options;
    std::vector<RankedConfig> rows;
};

inline RankedTable read_ranked_table(const std::string& text) {
    std::vector<std::string> lns = lines_of(text);
    if (lns.empty()) throw ParseError("ranked table is empty");
    std::vector<std::string> header = split(lns[0], '\t');
    if (header.size() < 3 || header[0] != "rank" || header[1] != "score") {
        throw ParseError("ranked table header must start with 'rank\\tscore'");
    }
    RankedTable table;
    table.options.assign(header.begin() + 2, header.end());
    for (std::size_t i = 1; i < lns.size(); ++i) {
        if (lns[i].empty()) continue;
        std::vector<std::string> cols = split(lns[i], '\t');
        if (cols.size() != header.size()) {
            throw ParseError("ranked row " + std::to_string(i + 1) + " is malformed");
        }
        RankedConfig rc;
        try {
            rc.rank = std::stoi(cols[0]);
            rc.score = std::stod(cols[1]);
        } catch (const std::exception&) {
            throw ParseError("ranked row " + std::to_string(i + 1) +
                             " has non-numeric rank or score");
        }
        rc.config.options = table.options;
        for (std::size_t k = 2; k < cols.size(); ++k) {
            if (cols[k] == "T") {
                rc.config.values.push_back(true);
            } else if (cols[k] == "F") {
                rc.config.values.push_back(false);
            } else {
                throw ParseError("ranked values must be T or F, got '" + cols[k] + "'");
            }
        }
        table.rows.push_back(std::move(rc));
    }
    return table;
}

// --- feature models ----------------------------------------------------------

inline FeatureModel read_feature_model(const std::string& text) {
    FeatureModel fm;
    std::vector<std::string> declared;
    std::vector<std::string> mention_order;
    std::set<std::string> mentioned;
    for (const auto& raw : lines_of(text)) {
        std::string line = trim(raw);
        if (line.empty() || line[0] == '#') continue;
        if (line.rfind("@options", 0) == 0) {
            std::istringstream iss(line.substr(8));
            std::string name;
            while (iss >> name) declared.push_back(name);
            continue;
        }
        ConditionPtr c = parse_formula(line);
        for (const auto& a : atoms(c)) {
            if (mentioned.insert(a).second) mention_order.push_back(a);
        }
        fm.constraints.push_back(c);
    }
    if (!declared.empty()) {
        std::set<std::string> universe(declared.begin(), declared.end());
        for (const auto& a : mention_order) {
            if (universe.count(a) == 0) {
                throw OptionMismatch("feature model constraint mentions option '" + a +
                                     "' missing from @options");
            }
        }
        fm.options = declared;
    } else {
        fm.options = mention_order;
    }
    return fm;
}

// --- bug specifications ------------------------------------------------------

inline std::vector<Bug> read_bugs(const std::string& text) {
    std::vector<Bug> bugs;
    for (const auto& raw : lines_of(text)) {
        std::string line = trim(raw);
        if (line.empty() || line[0] == '#') continue;
        std::size_t colon = line.find(':');
        if (colon == std::string::npos) {
            throw ParseError("bug line needs 'id: LIT, LIT': " + line);
        }
        Bug bug;
        bug.id = trim(line.substr(0, colon));
        if (bug.id.empty()) throw ParseError("bug line has empty id: " + line);
        for (const auto& lit : split(line.substr(colon + 1), ',')) {
            bug.literals.push_back(parse_literal(lit));
        }
        std::sort(bug.literals.begin(), bug.literals.end());
        bugs.push_back(std::move(bug));
    }
    return bugs;
}

// --- evaluation reports ------------------------------------------------------

inline std::string render_report_kv(const EvalReport& r) {
    std::string out;
    out += "n\t" + std::to_string(r.configs_total) + "\n";
    out += "m\t" + std::to_string(r.bugs_total) + "\n";
    out += "apfd\t" + format_fixed(r.apfd) + "\n";
    out += "average_position\t" + format_fixed(r.average_position) + "\n";
    for (int k : {1, 3, 5, 10}) {
        out += "top" + std::to_string(k) + "\t" + format_fixed(r.top_fraction.at(k)) + "\n";
    }
    for (const auto& [id, first] : r.first_detection) {
        out += "first_detection." + id + "\t" + std::to_string(first) + "\n";
    }
    std::string missed;
    for (std::size_t i = 0; i < r.undetected.size(); ++i) {
        if (i > 0) missed += ',';
        missed += r.undetected[i];
    }
    out += "undetected\t" + missed + "\n";
    return out;
}

inline std::string render_report_text(const EvalReport& r) {
    std::string out;
    if (!r.undetected.empty()) {
        out += "WARNING: undetected bugs (charged position n+1):";
        for (const auto& id : r.undetected) out += " " + id;
        out += "\n";
    }
    out += "configurations: " + std::to_string(r.configs_total) + "\n";
    out += "bugs: " + std::to_string(r.bugs_total) + "\n";
    out += "APFD: " + format_fixed(r.apfd) + "\n";
    out += "average detection position: " + format_fixed(r.average_position) + "\n";
    for (int k : {1, 3, 5, 10}) {
        out += "detected in top " + std::to_string(k) + ": " +
               format_fixed(r.top_fraction.at(k)) + "\n";
    }
    for (const auto& [id, first] : r.first_detection) {
        out += "bug " + id + ": first detected at position " + std::to_string(first) +
               (static_cast<std::size_t>(first) > r.configs_total ? " (undetected)" : "") +
               "\n";
    }
    return out;
}

// --- file io -----------------------------------------------------------------

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Writes via a temp file in the same directory plus rename, so readers never
// observe a half-written file.
inline void atomic_write_file(const std::string& path, const std::string& content) {
    std::filesystem::path target(path);
    std::filesystem::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write file: " + tmp.string());
        out << content;
        out.flush();
        if (!out) throw std::runtime_error("write failed: " + tmp.string());
    }
    std::filesystem::rename(tmp, target);
}

}  // namespace varprio
