#include "gbcsp/io.hpp"

#include <charconv>
#include <istream>
#include <map>
#include <sstream>
#include <vector>

namespace gbcsp {

namespace {

struct Tokenizer {
    std::istringstream line;
    std::size_t lineno;

    std::optional<std::string> next() {
        std::string tok;
        if (line >> tok) return tok;
        return std::nullopt;
    }

    template <typename Int>
    Int next_int(const char* what) {
        auto tok = next();
        if (!tok) throw ParseError(lineno, std::string("expected ") + what);
        Int value{};
        auto [p, ec] = std::from_chars(tok->data(), tok->data() + tok->size(), value);
        if (ec != std::errc{} || p != tok->data() + tok->size())
            throw ParseError(lineno, std::string("bad ") + what + " '" + *tok + "'");
        return value;
    }

    void expect_end() {
        if (auto tok = next()) throw ParseError(lineno, "unexpected trailing token '" + *tok + "'");
    }
};

struct GbcspRecords {
    bool has_header = false;
    std::uint32_t n = 0;
    std::uint64_t m = 0;
    std::size_t header_line = 0;
    std::vector<Relation> relations;
    struct App {
        std::size_t rel;
        std::vector<std::uint32_t> vars; // 0-based
        std::size_t lineno;
    };
    std::vector<App> applications;
};

GbcspRecords scan_gbcsp(std::istream& in) {
    GbcspRecords rec;
    std::map<std::string, std::size_t> by_name;
    std::string raw;
    std::size_t lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        Tokenizer t{std::istringstream(raw), lineno};
        auto head = t.next();
        if (!head || *head == "c") continue;
        if (*head == "p") {
            auto kind = t.next();
            if (!kind || *kind != "gbcsp") throw ParseError(lineno, "expected 'p gbcsp <n> <m>'");
            if (rec.has_header) throw ParseError(lineno, "duplicate header");
            rec.n = t.next_int<std::uint32_t>("variable count");
            rec.m = t.next_int<std::uint64_t>("constraint count");
            t.expect_end();
            rec.has_header = true;
            rec.header_line = lineno;
            if (rec.n < 1) throw ParseError(lineno, "need at least one variable");
        } else if (*head == "r") {
            auto name = t.next();
            if (!name) throw ParseError(lineno, "relation record without name");
            int k = t.next_int<int>("arity");
            if (k < 1 || k > kMaxArity) throw ParseError(lineno, "arity out of range");
            std::uint64_t s = t.next_int<std::uint64_t>("row count");
            if (s == 0 || s > (std::uint64_t{1} << k)) throw ParseError(lineno, "bad row count");
            std::vector<std::uint32_t> rows;
            for (std::uint64_t i = 0; i < s; ++i) {
                std::uint32_t row = t.next_int<std::uint32_t>("row");
                if (row >= (1u << k)) throw ParseError(lineno, "row " + std::to_string(row) + " out of range");
                rows.push_back(row);
            }
            t.expect_end();
            if (by_name.count(*name)) throw ParseError(lineno, "duplicate relation '" + *name + "'");
            by_name[*name] = rec.relations.size();
            try {
                rec.relations.emplace_back(*name, k, std::move(rows));
            } catch (const InputError& e) {
                throw ParseError(lineno, e.what());
            }
        } else if (*head == "a") {
            auto name = t.next();
            if (!name) throw ParseError(lineno, "application record without relation name");
            auto it = by_name.find(*name);
            if (it == by_name.end()) throw ParseError(lineno, "unknown relation '" + *name + "'");
            int k = rec.relations[it->second].arity();
            std::vector<std::uint32_t> vars;
            for (int i = 0; i < k; ++i) {
                std::int64_t v = t.next_int<std::int64_t>("variable");
                if (v < 1) throw ParseError(lineno, "variables are 1-indexed");
                vars.push_back(static_cast<std::uint32_t>(v - 1));
            }
            t.expect_end();
            rec.applications.push_back({it->second, std::move(vars), lineno});
        } else {
            throw ParseError(lineno, "unknown record '" + *head + "'");
        }
    }
    return rec;
}

Formula build_gbcsp_formula(const GbcspRecords& rec) {
    if (!rec.has_header) throw ParseError(1, "missing 'p gbcsp' header");
    if (rec.relations.empty()) throw ParseError(rec.header_line, "no relation records");
    if (rec.m != rec.applications.size())
        throw ParseError(rec.header_line, "header announces " + std::to_string(rec.m) +
                                              " constraints, file has " +
                                              std::to_string(rec.applications.size()));
    auto set = std::make_shared<const ConstraintSet>(std::vector<Relation>(rec.relations));
    Formula phi(rec.n, set);
    for (const auto& app : rec.applications) {
        for (std::uint32_t v : app.vars)
            if (v >= rec.n)
                throw ParseError(app.lineno, "variable " + std::to_string(v + 1) + " out of range");
        try {
            phi.add(static_cast<std::uint32_t>(app.rel), app.vars);
        } catch (const InputError& e) {
            throw ParseError(app.lineno, e.what());
        }
    }
    return phi;
}

Formula parse_dimacs(std::istream& in) {
    std::string raw;
    std::size_t lineno = 0;
    std::uint32_t n = 0;
    std::uint64_t m = 0;
    bool has_header = false;
    std::size_t header_line = 0;

    // clause accumulation; clauses may span lines
    std::vector<std::vector<std::int64_t>> clauses;
    std::vector<std::int64_t> current;

    while (std::getline(in, raw)) {
        ++lineno;
        Tokenizer t{std::istringstream(raw), lineno};
        auto head = t.next();
        if (!head || *head == "c") continue;
        if (*head == "p") {
            auto kind = t.next();
            if (!kind || *kind != "cnf") throw ParseError(lineno, "expected 'p cnf <n> <m>'");
            if (has_header) throw ParseError(lineno, "duplicate header");
            n = t.next_int<std::uint32_t>("variable count");
            m = t.next_int<std::uint64_t>("clause count");
            t.expect_end();
            has_header = true;
            header_line = lineno;
            if (n < 1) throw ParseError(lineno, "need at least one variable");
            continue;
        }
        if (!has_header) throw ParseError(lineno, "clause before 'p cnf' header");
        // tokens of this line are literals
        std::string tok = *head;
        while (true) {
            std::int64_t lit{};
            auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), lit);
            if (ec != std::errc{} || p != tok.data() + tok.size())
                throw ParseError(lineno, "bad literal '" + tok + "'");
            if (lit == 0) {
                if (current.empty()) throw ParseError(lineno, "empty clause");
                clauses.push_back(std::move(current));
                current.clear();
            } else {
                std::uint64_t v = static_cast<std::uint64_t>(lit < 0 ? -lit : lit);
                if (v > n) throw ParseError(lineno, "variable " + std::to_string(v) + " out of range");
                if (current.size() >= static_cast<std::size_t>(kMaxArity))
                    throw ParseError(lineno, "clause wider than " + std::to_string(kMaxArity));
                for (std::int64_t prev : current)
                    if ((prev < 0 ? -prev : prev) == static_cast<std::int64_t>(v))
                        throw ParseError(lineno, "duplicate variable " + std::to_string(v) + " in clause");
                current.push_back(lit);
            }
            auto next = t.next();
            if (!next) break;
            tok = *next;
        }
    }
    if (!current.empty()) throw ParseError(lineno, "clause not terminated by 0");
    if (clauses.size() != m)
        throw ParseError(header_line, "header announces " + std::to_string(m) + " clauses, file has " +
                                          std::to_string(clauses.size()));
    if (clauses.empty()) throw ParseError(header_line, "DIMACS input needs at least one clause");

    // uniform arity check; a clause with k literals maps to the arity-k OR
    // relation excluding exactly the row falsifying every literal
    std::size_t k = clauses.front().size();
    for (const auto& c : clauses)
        if (c.size() != k)
            throw ParseError(header_line,
                             "mixed clause widths (" + std::to_string(k) + " vs " + std::to_string(c.size()) + ")");

    std::vector<Relation> rels;
    std::map<std::uint32_t, std::uint32_t> by_false_row;
    std::vector<std::pair<std::uint32_t, std::vector<std::uint32_t>>> apps;
    for (const auto& c : clauses) {
        std::uint32_t fr = 0;
        std::vector<std::uint32_t> vars;
        for (std::size_t i = 0; i < k; ++i) {
            if (c[i] < 0) fr |= 1u << i;
            vars.push_back(static_cast<std::uint32_t>((c[i] < 0 ? -c[i] : c[i]) - 1));
        }
        auto it = by_false_row.find(fr);
        if (it == by_false_row.end()) {
            it = by_false_row.emplace(fr, static_cast<std::uint32_t>(rels.size())).first;
            rels.push_back(Relation::or_clause(static_cast<int>(k), fr));
        }
        apps.emplace_back(it->second, std::move(vars));
    }
    auto set = std::make_shared<const ConstraintSet>(std::move(rels));
    Formula phi(n, set);
    for (const auto& [rel, vars] : apps) phi.add(rel, vars);
    return phi;
}

} // namespace

Formula parse_formula(std::istream& in, TextFormat format) {
    if (format == TextFormat::Dimacs) return parse_dimacs(in);
    return build_gbcsp_formula(scan_gbcsp(in));
}

Formula parse_formula(std::string_view text, TextFormat format) {
    std::istringstream in{std::string(text)};
    return parse_formula(in, format);
}

ConstraintSet parse_constraint_set(std::string_view text) {
    std::istringstream in{std::string(text)};
    GbcspRecords rec = scan_gbcsp(in);
    if (!rec.applications.empty())
        throw InputError("relation block: unexpected application records");
    if (rec.relations.empty()) throw InputError("relation block: no 'r' records");
    return ConstraintSet(std::move(rec.relations));
}

std::string emit_constraint_set(const ConstraintSet& set) {
    std::ostringstream out;
    for (const Relation& r : set.relations()) {
        out << "r " << r.name() << ' ' << r.arity() << ' ' << r.rows().size();
        for (std::uint32_t row : r.rows()) out << ' ' << row;
        out << '\n';
    }
    return out.str();
}

std::string emit_formula(const Formula& phi, TextFormat format) {
    std::ostringstream out;
    const ConstraintSet& set = phi.constraint_set();
    if (format == TextFormat::Gbcsp) {
        out << "p gbcsp " << phi.num_vars() << ' ' << phi.num_applications() << '\n';
        out << emit_constraint_set(set);
        for (std::size_t app = 0; app < phi.num_applications(); ++app) {
            out << "a " << set[phi.relation_of(app)].name();
            for (std::uint32_t v : phi.vars_of(app)) out << ' ' << v + 1;
            out << '\n';
        }
        return out.str();
    }
    for (const Relation& r : set.relations())
        if (!r.is_clause())
            throw UnsupportedError("DIMACS output requires OR-of-literals relations; '" + r.name() +
                                   "' is not one");
    out << "p cnf " << phi.num_vars() << ' ' << phi.num_applications() << '\n';
    for (std::size_t app = 0; app < phi.num_applications(); ++app) {
        const Relation& r = set[phi.relation_of(app)];
        std::uint32_t fr = r.falsifying_row();
        auto vars = phi.vars_of(app);
        for (std::size_t i = 0; i < vars.size(); ++i) {
            std::int64_t lit = static_cast<std::int64_t>(vars[i]) + 1;
            if ((fr >> i) & 1u) lit = -lit;
            out << lit << ' ';
        }
        out << "0\n";
    }
    return out.str();
}

std::optional<TextFormat> sniff_format(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string raw;
    while (std::getline(in, raw)) {
        Tokenizer t{std::istringstream(raw), 0};
        auto head = t.next();
        if (!head || *head == "c") continue;
        if (*head == "p") {
            auto kind = t.next();
            if (kind && *kind == "cnf") return TextFormat::Dimacs;
            if (kind && *kind == "gbcsp") return TextFormat::Gbcsp;
            return std::nullopt;
        }
        if (*head == "r") return TextFormat::Gbcsp;
        return std::nullopt;
    }
    return std::nullopt;
}

const char* to_string(TextFormat format) {
    return format == TextFormat::Gbcsp ? "gbcsp" : "dimacs";
}

std::optional<TextFormat> parse_format_name(std::string_view name) {
    if (name == "gbcsp") return TextFormat::Gbcsp;
    if (name == "dimacs" || name == "cnf") return TextFormat::Dimacs;
    return std::nullopt;
}

} // namespace gbcsp
