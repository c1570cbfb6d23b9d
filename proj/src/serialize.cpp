#include "qsm/serialize.hpp"

#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace qsm {

namespace {

std::vector<std::string_view> lines_of(std::string_view text) {
    std::vector<std::string_view> out;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        out.push_back(line);
        if (nl == std::string_view::npos) break;
        text.remove_prefix(nl + 1);
    }
    return out;
}

// Field `index` of a row that must have exactly expected_fields fields.
std::string_view field(std::string_view line, std::size_t index, std::size_t expected_fields) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    for (;;) {
        const auto comma = line.find(',', start);
        parts.push_back(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    if (parts.size() != expected_fields) throw std::invalid_argument("csv: malformed row '" + std::string(line) + "'");
    return parts[index];
}

// Data rows of a CSV with a comment preamble and one header row.
std::vector<std::string_view> data_rows(std::string_view text, std::string_view header) {
    std::vector<std::string_view> rows;
    bool seen_header = false;
    for (auto line : lines_of(text)) {
        if (line.empty() || line.front() == '#') continue;
        if (!seen_header) {
            if (line != header) throw std::invalid_argument("csv: expected header '" + std::string(header) + "'");
            seen_header = true;
            continue;
        }
        rows.push_back(line);
    }
    if (!seen_header) throw std::invalid_argument("csv: missing header");
    return rows;
}

long parse_index(std::string_view s) {
    std::size_t used = 0;
    const long v = std::stol(std::string(s), &used);
    if (used != s.size()) throw std::invalid_argument("csv: bad index '" + std::string(s) + "'");
    return v;
}

}  // namespace

Json to_json(const Rational& r) { return r.to_string(); }

Rational rational_from_json(const Json& j) {
    if (!j.is_string()) throw std::invalid_argument("json: exact values must be strings");
    return Rational::parse(j.get<std::string>());
}

Json to_json(const UniPoly& p) {
    Json out = Json::array();
    for (const auto& c : p.coeffs()) out.push_back(to_json(c));
    return out;
}

UniPoly poly_from_json(const Json& j) {
    if (!j.is_array()) throw std::invalid_argument("json: polynomial must be an array");
    std::vector<Rational> c;
    for (const auto& x : j) c.push_back(rational_from_json(x));
    return UniPoly(std::move(c));
}

Json to_json(const TruncSeries& s) {
    Json out = Json::array();
    for (const auto& c : s.coeffs()) out.push_back(to_json(c));
    return out;
}

Json to_json(const VariantId& v) { return {{"family", family_name(v.family)}, {"pivots", v.pivots}}; }

VariantId variant_from_json(const Json& j) {
    return VariantId(parse_family(j.at("family").get<std::string>()), j.at("pivots").get<int>());
}

std::string kind_name(MomentKind k) {
    switch (k) {
        case MomentKind::raw: return "raw";
        case MomentKind::central: return "central";
        case MomentKind::mean: return "mean";
    }
    return "raw";
}

MomentKind parse_kind(std::string_view name) {
    if (name == "raw") return MomentKind::raw;
    if (name == "central") return MomentKind::central;
    if (name == "mean") return MomentKind::mean;
    throw std::invalid_argument("unknown moment kind '" + std::string(name) + "'");
}

Json to_json(const MomentSequence& s) {
    Json values = Json::array();
    for (const auto& x : s.values) values.push_back(to_json(x));
    return {{"variant", to_json(s.variant)}, {"order", s.order}, {"kind", kind_name(s.kind)}, {"from_n", 1},
            {"values", std::move(values)}};
}

MomentSequence moment_sequence_from_json(const Json& j) {
    if (j.at("from_n").get<int>() != 1) throw std::invalid_argument("json: moment sequences start at n = 1");
    MomentSequence s;
    s.variant = variant_from_json(j.at("variant"));
    s.order = j.at("order").get<int>();
    s.kind = parse_kind(j.at("kind").get<std::string>());
    for (const auto& x : j.at("values")) s.values.push_back(rational_from_json(x));
    return s;
}

Json to_json(const BasisMonomial& m) {
    Json h = Json::object();
    for (const auto& [k, e] : m.pow_h) h[std::to_string(k)] = e;
    return {{"monomial", m.to_string()}, {"pow_n", m.pow_n}, {"pow_h", std::move(h)}};
}

BasisMonomial monomial_from_json(const Json& j) {
    BasisMonomial m;
    m.pow_n = j.at("pow_n").get<int>();
    for (const auto& [k, e] : j.at("pow_h").items()) {
        const int exponent = e.get<int>();
        if (exponent != 0) m.pow_h[std::stoi(k)] = exponent;
    }
    return m;
}

Json to_json(const ClosedForm& f) {
    Json terms = Json::array();
    for (const auto& [m, c] : f.terms) {
        Json t = to_json(m);
        t["coefficient"] = to_json(c);
        terms.push_back(std::move(t));
    }
    return {{"validity_from", f.validity_from}, {"display", f.display()}, {"terms", std::move(terms)}};
}

ClosedForm closed_form_from_json(const Json& j) {
    ClosedForm f;
    f.validity_from = j.at("validity_from").get<int>();
    for (const auto& t : j.at("terms")) {
        const Rational c = rational_from_json(t.at("coefficient"));
        if (!c.is_zero()) f.terms[monomial_from_json(t)] = c;
    }
    return f;
}

Json to_json(const RecurrenceOperator& op) {
    Json coeffs = Json::array();
    for (const auto& c : op.coeffs) coeffs.push_back(to_json(c));
    Json monic = Json::array();
    for (const auto& [num, den] : op.monic()) monic.push_back({{"num", to_json(num)}, {"den", to_json(den)}});
    return {{"order", op.order}, {"degree", op.degree()}, {"display", op.display()},
            {"coefficients", std::move(coeffs)}, {"monic", std::move(monic)}};
}

RecurrenceOperator operator_from_json(const Json& j) {
    RecurrenceOperator op;
    op.order = j.at("order").get<int>();
    for (const auto& c : j.at("coefficients")) op.coeffs.push_back(poly_from_json(c));
    if (static_cast<int>(op.coeffs.size()) != op.order + 1)
        throw std::invalid_argument("json: operator needs order + 1 coefficients");
    return op;
}

Json to_json(const TrialStats& s) {
    return {{"trials", s.trials},
            {"seed", s.seed},
            {"mean", s.mean},
            {"sample_variance", s.sample_variance},
            {"standard_error", s.standard_error()}};
}

std::string to_csv(const UniPoly& p) {
    std::ostringstream os;
    os << kCsvLossyNote << "\npower,exact,decimal\n";
    for (std::size_t i = 0; i < p.coeffs().size(); ++i)
        os << i << ',' << p.coeffs()[i].to_string() << ',' << p.coeffs()[i].to_decimal(kCsvDigits) << '\n';
    return os.str();
}

UniPoly poly_from_csv(std::string_view text) {
    std::vector<Rational> c;
    for (auto row : data_rows(text, "power,exact,decimal")) {
        if (parse_index(field(row, 0, 3)) != static_cast<long>(c.size()))
            throw std::invalid_argument("csv: powers must be consecutive from 0");
        c.push_back(Rational::parse(field(row, 1, 3)));
    }
    return UniPoly(std::move(c));
}

std::string to_csv(const MomentSequence& s) {
    std::ostringstream os;
    os << kCsvLossyNote << '\n'
       << "# variant=" << variant_key(s.variant) << " order=" << s.order << " kind=" << kind_name(s.kind) << '\n'
       << "n,exact,decimal\n";
    for (int n = 1; n <= s.upto(); ++n) os << n << ',' << s.at(n).to_string() << ',' << s.at(n).to_decimal(kCsvDigits) << '\n';
    return os.str();
}

std::vector<Rational> values_from_csv(std::string_view text) {
    std::vector<Rational> out;
    for (auto row : data_rows(text, "n,exact,decimal")) {
        if (parse_index(field(row, 0, 3)) != static_cast<long>(out.size()) + 1)
            throw std::invalid_argument("csv: n must be consecutive from 1");
        out.push_back(Rational::parse(field(row, 1, 3)));
    }
    return out;
}

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string hex64(std::uint64_t x) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(x));
    return buf;
}

}  // namespace qsm
