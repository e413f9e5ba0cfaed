#include "jrfl/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <functional>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>
#include <thread>

#include "jrfl/errors.hpp"
#include "jrfl/orbital.hpp"

namespace jrfl::cli {

namespace {

constexpr int kSchemaVersion = 1;

std::string rational_text(const Rational& r) {
    if (r.denominator() == 1) return std::to_string(r.numerator());
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

std::vector<std::string> rationals_text(const std::vector<Rational>& v) {
    std::vector<std::string> out;
    for (const auto& r : v) out.push_back(rational_text(r));
    return out;
}

bool is_prime(int p) {
    if (p < 2) return false;
    for (int d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

std::vector<int> parse_int_list(const std::string& text, const char* what) {
    std::vector<int> out;
    if (text.empty()) return out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stoi(item, &used));
            if (used != item.size() && item.find_first_not_of(' ', used) != std::string::npos)
                throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw ConfigError(std::string("--") + what + ": '" + item + "' is not an integer (expected e.g. 1,0,2)");
        }
    }
    return out;
}

int default_max_val_disc(int n) { return n == 2 ? 4 : 2; }

std::optional<int> parity_constraint(const RunConfig& c) {
    if (c.parity == "any") return std::nullopt;
    if (c.parity == "even") return 0;
    if (c.parity == "odd") return 1;
    throw ConfigError("--parity must be even, odd or any (got '" + c.parity + "')");
}

IcNormalization normalization_for(const Coweight& lambda) {
    return lambda.two_rho_pairing() % 2 == 0 ? IcNormalization::satake : IcNormalization::stalk;
}

InvariantPoint sample_point(const PlaceData& place, const RunConfig& c, const Coweight& lambda, CounterRng& rng) {
    TwistedConstraints k;
    k.boundary = lambda.root_pairings();
    k.disc_parity = parity_constraint(c);
    k.max_val_disc = c.bound.value_or(default_max_val_disc(c.n));
    return random_twisted(place, k, rng);
}

Record point_summary(const InvariantPoint& a) {
    return Record{{"a_digest", invariant_digest(a)},
                  {"val_disc", a.val_disc},
                  {"val_disc_plus", a.val_disc_plus},
                  {"boundary", boundary_coweight(a).to_string()}};
}

bool same_series(const std::vector<Series>& a, const std::vector<Series>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!a[i].agrees(b[i])) return false;
    return true;
}

std::vector<Series> random_list(const SeriesRing* ring, int count, CounterRng& rng, bool units) {
    std::vector<Series> out;
    for (int i = 0; i < count; ++i) out.push_back(units ? random_unit(ring, 2, rng) : random_series(ring, 0, 2, rng));
    return out;
}

// ---------------------------------------------------------------- trials

using TrialFn = std::function<Record(std::uint64_t trial)>;

std::vector<Record> run_trials(const RunConfig& c, int trials, const TrialFn& fn) {
    std::vector<Record> records(static_cast<std::size_t>(std::max(trials, 0)));
    std::atomic<int> next{0};
    auto worker = [&] {
        for (int t = next++; t < trials; t = next++) {
            Record r;
            try {
                r = fn(static_cast<std::uint64_t>(t));
            } catch (const std::exception& ex) {
                r = Record{{"verdict", "error"}, {"ok", false}, {"error", ex.what()}};
            }
            r["trial"] = t;
            records[static_cast<std::size_t>(t)] = std::move(r);
        }
    };
    const int workers = std::clamp(c.workers, 1, std::max(trials, 1));
    std::vector<std::thread> pool;
    for (int w = 1; w < workers; ++w) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    return records;
}

Record invariants_trial(const PlaceData& place, const RunConfig& c, std::uint64_t t) {
    CounterRng rng(c.seed, t);
    const int n = place.n();
    const SeriesRing* ring = place.cover_ring();
    auto z = random_list(ring, n - 1, rng, true);
    auto a1 = random_list(ring, n - 1, rng, false), a2 = random_list(ring, n - 1, rng, false);
    const bool companion = same_series(chi(companion_section(z, a1)), a1);
    auto [first, second] = chi_MH(section_MH(z, a1, a2));
    const bool mh = same_series(first, a1) && same_series(second, a2);
    InvariantCoords coords{z, a1, random_list(ring, n - 1, rng, false), random_series(ring, 0, 2, rng)};
    InvariantCoords back = deformed_invariants(deformed_section(coords));
    const bool deformed = same_series(back.z, coords.z) && same_series(back.a, coords.a) &&
                          same_series(back.b, coords.b) && back.b0.agrees(coords.b0);
    InvariantPoint p = sample_point(place, c, Coweight{std::vector<int>(static_cast<std::size_t>(n), 0)}, rng);
    const bool twisted = check_twisted(p);
    const bool ok = companion && mh && deformed && twisted;
    Record r = point_summary(p);
    r.update(Record{{"section_M", companion},
                    {"section_MH", mh},
                    {"section_deformed", deformed},
                    {"twisted_relations", twisted},
                    {"ok", ok},
                    {"verdict", ok ? "pass" : "fail"}});
    return r;
}

Record match_trial(const PlaceData& place, const RunConfig& c, std::uint64_t t) {
    CounterRng rng(c.seed, t);
    InvariantPoint a = sample_point(place, c, c.lambda_coweight(), rng);
    Record r = point_summary(a);
    r["obstruction"] = to_string(obstruction(a));
    r["matching_pair"] = is_matching_pair(a);
    r["newton_point"] = rationals_text(newton_point(a));
    bool ok = true;
    if (place.inert()) {
        BasePoint base = lift_basepoint(a);
        Matrix s = solve_cocycle(base, Side::symmetric);
        Matrix h = solve_cocycle(base, Side::unitary);
        const bool s_ok = (s * s.frobenius()).agrees(Matrix::identity(place.n(), place.cover_ring()));
        const bool h_ok = h.agrees(h.frobenius().transpose());
        const int val_det_h = h.det().valuation();
        const bool parity_ok = (val_det_h - a.val_disc) % 2 == 0;
        r.update(Record{{"s_sbar_identity", s_ok},
                        {"h_hermitian", h_ok},
                        {"val_det_h", val_det_h},
                        {"parity_link", parity_ok}});
        ok = s_ok && h_ok && parity_ok;
    }
    r["ok"] = ok;
    r["verdict"] = ok ? "pass" : "fail";
    return r;
}

Record fiber_trial(const PlaceData& place, const RunConfig& c, std::uint64_t t) {
    CounterRng rng(c.seed, t);
    const Coweight lambda = c.lambda_coweight();
    InvariantPoint a = sample_point(place, c, lambda, rng);
    const IcNormalization norm = normalization_for(lambda);
    Record r = point_summary(a);
    CertifiedCount sym = certified_count(make_fiber_model(a, Side::symmetric), lambda, norm);
    CertifiedCount uni = certified_count(make_fiber_model(a, Side::unitary), lambda, norm);
    const bool odd = place.inert() && a.val_disc % 2 != 0;
    // An odd discriminant valuation obstructs unitary lattices.
    const bool ok = !(odd && uni.points > 0);
    r.update(Record{{"symmetric_points", sym.points},
                    {"symmetric_value", rational_text(sym.value)},
                    {"unitary_points", uni.points},
                    {"unitary_value", rational_text(uni.value)},
                    {"bound", std::max(sym.bound, uni.bound)},
                    {"certified", true},
                    {"ok", ok},
                    {"verdict", ok ? "pass" : "fail"}});
    return r;
}

Record fl_trial(const PlaceData& place, const RunConfig& c, std::uint64_t t) {
    CounterRng rng(c.seed, t);
    const Coweight lambda = c.lambda_coweight();
    InvariantPoint a = sample_point(place, c, lambda, rng);
    FLOptions options;
    options.norm = normalization_for(lambda);
    options.skip_odd_disc = true;
    FLReport rep = fl_check(a, lambda, options);
    Record r = point_summary(a);
    r["lambda"] = lambda.to_string();
    r["verdict"] = to_string(rep.verdict);
    if (rep.verdict == FLVerdict::skipped_odd_disc) {
        // Both sides vanish for odd discriminant valuation; nothing is enumerated.
        r.update(Record{{"lhs", "0"}, {"rhs", "0"}, {"computed", false}});
    } else {
        r.update(Record{{"lhs", rational_text(*rep.lhs)},
                        {"rhs", rational_text(*rep.rhs)},
                        {"computed", true},
                        {"symmetric_points", rep.points_symmetric},
                        {"unitary_points", rep.points_unitary}});
    }
    r["ok"] = rep.verdict != FLVerdict::unequal;
    return r;
}

Record oi_trial(const PlaceData& place, const RunConfig& c, std::uint64_t t) {
    CounterRng rng(c.seed, t);
    const bool explicit_lambda = !c.lambda.empty();
    auto lambda_for = [&](const Matrix& A) {
        if (explicit_lambda) return c.lambda_coweight();
        const int m = std::max(0, -A.min_valuation()) + static_cast<int>(t % 2);
        return Coweight{{m, -m}};
    };
    Matrix A = random_symmetric_element(place, 1, rng);
    const Coweight lambda = lambda_for(A);
    FLOptions options;
    options.norm = normalization_for(lambda);
    FLReport rep = fl_check_group(place, A, lambda, options);
    const bool literal = *rep.lhs == *rep.rhs;
    const bool signed_equal = *rep.lhs == Rational(rep.lift_sign) * *rep.rhs;

    Matrix U = random_unitary_element(place, 1, rng);
    const Coweight lambda_u = lambda_for(U);
    const IcNormalization norm_u = normalization_for(lambda_u);
    Rational oi_u = direct_oi_unitary(place, U, lambda_u, std::nullopt, norm_u).value;
    FiberModel model = make_fiber_model(lift_to_monoid(place, U, lambda_u, Side::unitary), Side::unitary);
    Rational count_u = certified_count(model, model.lambda, norm_u).value;
    const bool unitary_equal = oi_u == count_u;

    const bool ok = signed_equal && unitary_equal;
    return Record{{"a_digest", rep.a_digest},
                  {"lambda", lambda.to_string()},
                  {"transfer_factor", rep.transfer_factor},
                  {"lift_sign", rep.lift_sign},
                  {"symmetric_lhs", rational_text(*rep.lhs)},
                  {"symmetric_fiber", rational_text(*rep.rhs)},
                  {"literal_equal", literal},
                  {"signed_equal", signed_equal},
                  {"unitary_lambda", lambda_u.to_string()},
                  {"unitary_oi", rational_text(oi_u)},
                  {"unitary_fiber", rational_text(count_u)},
                  {"unitary_equal", unitary_equal},
                  {"ok", ok},
                  {"verdict", ok ? "pass" : "fail"}};
}

Record feq_trial(const PlaceData& place, const RunConfig& c, std::uint64_t t) {
    CounterRng rng(c.seed, t);
    const Coweight lambda = c.lambda_coweight();
    InvariantPoint a = sample_point(place, c, lambda, rng);
    FunctionalEquationResult f = functional_equation_check(a, lambda, normalization_for(lambda));
    Record r = point_summary(a);
    r.update(Record{{"pairs_checked", f.pairs_checked},
                    {"count", rational_text(f.count)},
                    {"holds", f.holds},
                    {"ok", f.holds},
                    {"verdict", f.holds ? "pass" : "fail"}});
    return r;
}

ScenarioParams scenario_params(const RunConfig& c) {
    ScenarioParams p;
    p.n = c.n;
    p.q = c.resolved_q();
    p.prec = c.prec;
    p.seed = c.seed;
    const bool case_a = c.scenario_case == "A";
    if (c.involution.empty()) {
        p.involution.resize(static_cast<std::size_t>(c.n));
        for (int i = 0; i < c.n; ++i) p.involution[static_cast<std::size_t>(i)] = i;
        if (!case_a) std::swap(p.involution[0], p.involution[1]);
    } else {
        for (int image : parse_int_list(c.involution, "involution")) p.involution.push_back(image - 1);
    }
    p.e = parse_int_list(c.e, "e");
    p.e_dual = parse_int_list(c.e_dual, "e-dual");
    if (p.e.empty()) p.e.assign(static_cast<std::size_t>(c.n), 0);
    if (p.e_dual.empty()) p.e_dual.assign(static_cast<std::size_t>(c.n), 0);
    if (p.involution.size() != static_cast<std::size_t>(c.n) || p.e.size() != static_cast<std::size_t>(c.n) ||
        p.e_dual.size() != static_cast<std::size_t>(c.n))
        throw ConfigError("--involution, --e and --e-dual need exactly n = " + std::to_string(c.n) + " entries");
    if (!case_a && !c.lambda.empty()) p.lambda = c.lambda_coweight();
    return p;
}

Record casecheck_record(const RunConfig& c) {
    if (c.scenario_case != "A" && c.scenario_case != "B")
        throw ConfigError("--case must be A or B (got '" + c.scenario_case + "')");
    ScenarioParams p = scenario_params(c);
    auto build = [&] {
        try {
            return c.scenario_case == "A" ? case_a_scenario(p) : case_b_scenario(p);
        } catch (const ConstraintUnsatisfiable& ex) {
            throw ConfigError(std::string("scenario parameters rejected: ") + ex.what());
        }
    };
    const Scenario s = build();
    FLOptions options;
    options.norm = s.norm;
    FLReport rep = fl_check(s.a, s.lambda, options);
    const Rational expected(s.expected);
    const bool ok = *rep.lhs == expected && *rep.rhs == expected;
    Record r = point_summary(s.a);
    r.update(Record{{"case", c.scenario_case},
                    {"description", s.description},
                    {"lambda", s.lambda.to_string()},
                    {"expected", s.expected},
                    {"lhs", rational_text(*rep.lhs)},
                    {"rhs", rational_text(*rep.rhs)},
                    {"symmetric_points", rep.points_symmetric},
                    {"unitary_points", rep.points_unitary},
                    {"ok", ok},
                    {"verdict", ok ? "pass" : "fail"}});
    return r;
}

void partitions_into(int remaining, int max_part, int slots, std::vector<int>& current,
                     std::vector<std::vector<int>>& out) {
    if (remaining == 0) {
        std::vector<int> p = current;
        p.resize(current.size() + static_cast<std::size_t>(slots), 0);
        out.push_back(p);
        return;
    }
    if (slots == 0) return;
    for (int part = std::min(remaining, max_part); part >= 1; --part) {
        current.push_back(part);
        partitions_into(remaining - part, part, slots - 1, current, out);
        current.pop_back();
    }
}

std::string polynomial_text(const IntPolynomial& p) {
    std::string out;
    for (std::size_t i = 0; i < p.size(); ++i) out += (i ? " " : "") + std::to_string(p[i]);
    return out;
}

std::vector<Record> kostka_records(const RunConfig& c) {
    std::vector<std::vector<int>> shapes;
    if (!c.lambda.empty()) {
        Coweight l = c.lambda_coweight();
        if (!l.is_dominant() || (!l.parts.empty() && l.parts.back() < 0))
            throw ConfigError("--lambda for kostka must be a partition, e.g. 3,1,0");
        shapes.push_back(l.parts);
    } else {
        if (c.size < 0) throw ConfigError("--size must be non-negative");
        std::vector<int> current;
        partitions_into(c.size, c.size, c.n, current, shapes);
    }
    std::vector<Record> out;
    for (const auto& shape : shapes) {
        const Coweight lambda{shape};
        for (const Coweight& mu : dominant_below(lambda)) {
            IntPolynomial k = kostka_foulkes(lambda, mu);
            long long at_one = 0;
            for (long long coeff : k) at_one += coeff;
            const auto tableaux = static_cast<long long>(tableau_reading_words(lambda.parts, mu.parts).size());
            const bool ok = at_one == tableaux && (!(lambda == mu) || k == IntPolynomial{1});
            out.push_back(Record{{"lambda", lambda.to_string()},
                                 {"mu", mu.to_string()},
                                 {"coefficients", polynomial_text(k)},
                                 {"tableaux", tableaux},
                                 {"ok", ok},
                                 {"verdict", ok ? "pass" : "fail"}});
        }
    }
    for (std::size_t i = 0; i < out.size(); ++i) out[i]["trial"] = i;
    return out;
}

void tally(RunResult& r) {
    r.passed = r.failed = 0;
    for (const auto& rec : r.records) (rec.value("ok", false) ? r.passed : r.failed)++;
    r.exit_status = r.failed == 0 ? 0 : 1;
    r.digest = report_digest(r.records);
}

std::vector<Record> dispatch(const std::string& name, const RunConfig& c) {
    if (name == "kostka") return kostka_records(c);
    if (name == "casecheck") {
        Record r = casecheck_record(c);
        r["trial"] = 0;
        return {r};
    }
    const PlaceData place = c.place_data();
    if (c.trials < 0) throw ConfigError("--trials must be non-negative");
    using Trial = Record (*)(const PlaceData&, const RunConfig&, std::uint64_t);
    static const std::map<std::string, Trial> trials{{"invariants", invariants_trial}, {"match", match_trial},
                                                     {"fiber", fiber_trial},           {"fl-check", fl_trial},
                                                     {"oi", oi_trial},                 {"feq", feq_trial}};
    auto it = trials.find(name);
    if (it == trials.end()) throw ConfigError("unknown subcommand '" + name + "'");
    if (name == "oi" && c.n != 2) throw ConfigError("oi compares orbital integrals at n = 2 only (got --n " +
                                                    std::to_string(c.n) + ")");
    if (name != "invariants") {
        Coweight l = c.lambda_coweight();
        if (!sigma_out_fixed(l) && name != "oi") throw ConfigError("--lambda " + l.to_string() +
                                                                   " is not fixed by the outer automorphism");
    }
    Trial fn = it->second;
    return run_trials(c, c.trials, [&](std::uint64_t t) { return fn(place, c, t); });
}

RunResult selftest(const RunConfig& base) {
    RunResult result;
    std::vector<std::string> steps{"invariants", "match", "fiber", "fl-check", "feq", "casecheck", "kostka"};
    if (base.n == 2) steps.push_back("oi");
    for (const auto& step : steps) {
        RunConfig c = base;
        if (step == "fiber" || step == "feq" || step == "oi") c.trials = std::min(base.trials, 20);
        if (step == "casecheck") {
            c.scenario_case = base.n == 2 ? "B" : "A";
            c.lambda.clear();
            if (base.n == 2) c.e = c.e_dual = "1,1";
        }
        if (step == "kostka") c.lambda.clear();
        std::vector<Record> records = dispatch(step, c);
        std::size_t passed = 0;
        for (auto& r : records) {
            if (r.value("ok", false)) ++passed;
            r["subcommand"] = step;
            result.records.push_back(std::move(r));
        }
        result.summary.push_back({step, std::to_string(records.size()), std::to_string(passed),
                                  std::to_string(records.size() - passed)});
    }
    tally(result);
    return result;
}

// ---------------------------------------------------------------- output

std::string cell_text(const Record& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_array()) {
        std::string out;
        for (std::size_t i = 0; i < v.size(); ++i) out += (i ? " " : "") + cell_text(v[i]);
        return out;
    }
    return v.dump();
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) out += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    return out + "\"";
}

std::vector<std::string> columns_of(const std::vector<Record>& records) {
    std::vector<std::string> cols{"trial"};
    for (const auto& r : records)
        for (const auto& [key, _] : r.items())
            if (std::find(cols.begin(), cols.end(), key) == cols.end()) cols.push_back(key);
    return cols;
}

void write_table(std::ostream& out, const std::vector<std::string>& header,
                 const std::vector<std::vector<std::string>>& rows) {
    std::vector<std::size_t> width(header.size());
    for (std::size_t i = 0; i < header.size(); ++i) width[i] = header[i].size();
    for (const auto& row : rows)
        for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].size());
    auto line = [&](const std::vector<std::string>& row) {
        for (std::size_t i = 0; i < row.size(); ++i)
            out << (i ? "  " : "") << std::left << std::setw(static_cast<int>(width[i])) << row[i];
        out << "\n";
    };
    line(header);
    std::vector<std::string> rule;
    for (auto w : width) rule.emplace_back(w, '-');
    line(rule);
    for (const auto& row : rows) line(row);
}

}  // namespace

std::string to_string(OutputFormat format) {
    switch (format) {
        case OutputFormat::json: return "json";
        case OutputFormat::csv: return "csv";
        case OutputFormat::table: return "table";
    }
    return "json";
}

OutputFormat output_format_from_string(const std::string& text) {
    if (text == "json") return OutputFormat::json;
    if (text == "csv") return OutputFormat::csv;
    if (text == "table") return OutputFormat::table;
    throw ConfigError("--out must be json, csv or table (got '" + text + "')");
}

int RunConfig::resolved_q() const {
    if (q != 0) return q;
    int p = 2 * n + 1;
    while (!is_prime(p)) ++p;
    return p;
}

int RunConfig::residue_characteristic() const {
    const int size = resolved_q();
    if (ext_degree < 1) throw ConfigError("--ext-degree must be at least 1");
    for (int p = 2; p <= size; ++p) {
        if (!is_prime(p)) continue;
        long long power = 1;
        for (int i = 0; i < ext_degree; ++i) power *= p;
        if (power == size) return p;
        if (power > size) continue;
    }
    throw ConfigError("--q " + std::to_string(size) + " is not p^" + std::to_string(ext_degree) +
                      " for a prime p; adjust --q or --ext-degree");
}

PlaceData RunConfig::place_data() const {
    if (n < 2) throw ConfigError("--n must be at least 2");
    if (prec < 4) throw ConfigError("--prec must be at least 4");
    const int p = residue_characteristic();
    try {
        return PlaceData(p, ext_degree, n, place, prec);
    } catch (const std::invalid_argument& ex) {
        throw ConfigError(std::string(ex.what()) + "; choose a larger --q");
    }
}

Coweight RunConfig::lambda_coweight() const {
    if (lambda.empty()) return Coweight{std::vector<int>(static_cast<std::size_t>(n), 0)};
    Coweight c;
    try {
        c = Coweight::parse(lambda);
    } catch (const std::exception& ex) {
        throw ConfigError("--lambda '" + lambda + "': " + ex.what());
    }
    if (c.rank() != n)
        throw ConfigError("--lambda " + c.to_string() + " has " + std::to_string(c.rank()) + " entries but n = " +
                          std::to_string(n));
    if (!c.is_dominant()) throw ConfigError("--lambda " + c.to_string() + " must be non-increasing");
    return c;
}

OutputFormat RunConfig::output_for(const std::string& subcommand) const {
    if (out) return *out;
    if (subcommand == "kostka") return OutputFormat::csv;
    if (subcommand == "selftest") return OutputFormat::table;
    return OutputFormat::json;
}

nlohmann::json RunConfig::to_json() const {
    nlohmann::json j{{"q", resolved_q()},
                     {"ext_degree", ext_degree},
                     {"n", n},
                     {"place", jrfl::to_string(place)},
                     {"prec", prec},
                     {"seed", seed},
                     {"trials", trials},
                     {"lambda", lambda_coweight().to_string()},
                     {"parity", parity},
                     {"workers", workers}};
    j["bound"] = bound ? nlohmann::json(*bound) : nlohmann::json(nullptr);
    return j;
}

const std::vector<std::string>& subcommand_names() {
    static const std::vector<std::string> names{"invariants", "match", "fiber",  "oi",      "fl-check",
                                                "casecheck",  "feq",   "kostka", "selftest"};
    return names;
}

RunResult run_subcommand(const std::string& name, const RunConfig& config) {
    if (std::find(subcommand_names().begin(), subcommand_names().end(), name) == subcommand_names().end())
        throw ConfigError("unknown subcommand '" + name + "'");
    if (config.workers < 1) throw ConfigError("--workers must be at least 1");
    if (name == "selftest") return selftest(config);
    RunResult result;
    result.records = dispatch(name, config);
    tally(result);
    return result;
}

std::string report_digest(const std::vector<Record>& records) {
    std::string canonical;
    for (const auto& r : records) canonical += r.dump() + "\n";
    return sha256_hex(canonical);
}

void write_report(std::ostream& out, const std::string& name, const RunConfig& config, const RunResult& result) {
    const OutputFormat format = config.output_for(name);
    if (format == OutputFormat::json) {
        Record header{{"record", "header"},
                      {"schema", "jrfl-report"},
                      {"schema_version", kSchemaVersion},
                      {"subcommand", name},
                      {"config", config.to_json()}};
        out << header.dump() << "\n";
        for (const auto& r : result.records) {
            Record line = r;
            line["record"] = "trial";
            out << line.dump() << "\n";
        }
        Record summary{{"record", "summary"},
                       {"records", result.records.size()},
                       {"passed", result.passed},
                       {"failed", result.failed},
                       {"exit_status", result.exit_status},
                       {"report_digest", result.digest}};
        out << summary.dump() << "\n";
        return;
    }
    if (name == "selftest") {
        write_table(out, {"subcommand", "records", "passed", "failed"}, result.summary);
        out << "report_digest " << result.digest << "\n";
        return;
    }
    const auto cols = columns_of(result.records);
    std::vector<std::vector<std::string>> rows;
    for (const auto& r : result.records) {
        std::vector<std::string> row;
        for (const auto& col : cols) row.push_back(r.contains(col) ? cell_text(r[col]) : "");
        rows.push_back(std::move(row));
    }
    if (format == OutputFormat::csv) {
        for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << csv_escape(cols[i]);
        out << "\n";
        for (const auto& row : rows) {
            for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_escape(row[i]);
            out << "\n";
        }
        return;
    }
    write_table(out, cols, rows);
    out << "passed " << result.passed << ", failed " << result.failed << ", report_digest " << result.digest
        << "\n";
}

Invocation parse_command_line(const std::vector<std::string>& args) {
    CLI::App app{"Exact point counts and orbital integrals for the local Jacquet-Rallis comparison"};
    app.set_config("--config", "", "flat key=value file mirroring the flags; flags take precedence");
    Invocation inv;
    RunConfig& c = inv.config;
    std::string place = "inert", out;
    int bound = -1;
    app.add_option("subcommand", inv.subcommand, "one of: invariants match fiber oi fl-check casecheck feq kostka selftest")
        ->required()
        ->check(CLI::IsMember(subcommand_names()));
    app.add_option("--q", c.q, "residue field size (default: smallest prime > 2n)");
    app.add_option("--ext-degree", c.ext_degree, "degree of the residue field over F_p");
    app.add_option("--n", c.n, "rank");
    app.add_option("--place", place, "split or inert")->check(CLI::IsMember({"split", "inert"}));
    app.add_option("--prec", c.prec, "series precision");
    app.add_option("--seed", c.seed, "64-bit seed");
    app.add_option("--trials", c.trials, "number of sampled trials");
    app.add_option("--lambda", c.lambda, "dominant coweight, e.g. 1,-1");
    app.add_option("--bound", bound, "max val Disc of sampled points");
    app.add_option("--workers", c.workers, "worker threads");
    app.add_option("--out", out, "json, csv or table")->check(CLI::IsMember({"json", "csv", "table"}));
    app.add_option("--parity", c.parity, "even, odd or any")->check(CLI::IsMember({"even", "odd", "any"}));
    app.add_option("--case", c.scenario_case, "casecheck: A or B")->check(CLI::IsMember({"A", "B"}));
    app.add_option("--involution", c.involution, "casecheck: 1-based images, e.g. 1,3,2,4");
    app.add_option("--e", c.e, "casecheck: valuations of e");
    app.add_option("--e-dual", c.e_dual, "casecheck: valuations of e^vee");
    app.add_option("--size", c.size, "kostka: size of the partitions");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        throw HelpRequested{app.help()};
    } catch (const CLI::ParseError& ex) {
        throw ConfigError(std::string(ex.what()) + " (run with --help for usage)");
    }
    c.place = place_kind_from_string(place);
    if (!out.empty()) c.out = output_format_from_string(out);
    if (bound >= 0) c.bound = bound;
    return inv;
}

int run_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    try {
        Invocation inv = parse_command_line(args);
        RunResult result = run_subcommand(inv.subcommand, inv.config);
        write_report(out, inv.subcommand, inv.config, result);
        return result.exit_status;
    } catch (const HelpRequested& help) {
        out << help.text;
        return 0;
    } catch (const ConfigError& ex) {
        err << "error: " << ex.what() << "\n";
        return 2;
    }
}

}  // namespace jrfl::cli
