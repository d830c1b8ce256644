#include "laver/conjectures.hpp"

#include <array>
#include <chrono>
#include <stdexcept>

#include "laver/sweep.hpp"

namespace laver {
namespace {

constexpr std::uint64_t pow2(Rank k) { return std::uint64_t{1} << k; }

struct CheckInfo {
    Check check;
    std::string_view name;
    Rank min_rank;
    int parity;
    Rank extra_tables;  // required rank = n + extra_tables
};

constexpr std::array<CheckInfo, 12> kChecks{{
    {Check::th, "th", 1, 0, 1},
    {Check::wth, "wth", 1, 0, 1},
    {Check::wth1, "wth1", 1, 0, 1},
    {Check::wth2, "wth2", 1, 0, 1},
    {Check::wth3, "wth3", 1, 0, 1},
    {Check::twin, "twin", 1, 1, 1},
    {Check::uh, "uh", 1, 0, 1},
    {Check::weak_uh, "wuh", 1, 0, 1},
    {Check::lemma53, "lemma53", 1, 0, 1},
    {Check::lemma54, "lemma54", 2, 0, 1},
    {Check::lemma59, "lemma59", 2, 2, 1},
    {Check::cor510, "cor510", 1, 1, 2},
}};

const CheckInfo& info(Check check) {
    for (const auto& entry : kChecks) {
        if (entry.check == check) return entry;
    }
    throw std::logic_error("unknown check");
}

// The c of the threshold hypotheses: c + 1 = t_n(a).
std::uint64_t threshold_c(Rank n, std::uint64_t a, const TableTower& tower) {
    return tower.at(n).threshold(static_cast<Element>(TableTower::reduce(a, n))) - 1;
}

// Least range witness for gamma_k and the unique i with c . gamma_i = gamma_k.
struct LeastWitness {
    std::uint64_t c = 0;
    Rank i = 0;
};

LeastWitness least_witness_with_index(Rank k, const TableTower& tower) {
    LeastWitness w;
    w.c = least_range_witness(GammaIndex{k}, tower);
    int matches = 0;
    for (Rank i = 0; i <= k; ++i) {
        const auto image = act_on_gamma(w.c, GammaIndex{i}, tower, k + 1);
        if (image.certified && image.value.idx == k) {
            w.i = i;
            ++matches;
        }
    }
    if (matches != 1) {
        throw std::logic_error("least range witness " + std::to_string(w.c) + " for gamma_" + std::to_string(k) +
                               " has " + std::to_string(matches) + " preimage indices, expected exactly one");
    }
    return w;
}

// Equality of a . gamma_i and b . gamma_i; empty when the tables cannot
// decide it.
std::optional<bool> same_action(std::uint64_t a, std::uint64_t b, Rank i, const TableTower& tower) {
    const auto x = act_on_gamma(a, GammaIndex{i}, tower);
    const auto y = act_on_gamma(b, GammaIndex{i}, tower);
    if (x.certified && y.certified) return x.value == y.value;
    if (x.certified && !y.certified) return x.value.idx < y.value.idx ? std::optional<bool>(false) : std::nullopt;
    if (!x.certified && y.certified) return y.value.idx < x.value.idx ? std::optional<bool>(false) : std::nullopt;
    return std::nullopt;
}

struct Domain {
    std::uint64_t begin = 0;
    std::uint64_t end = 0;
    std::uint64_t size = 0;  // elements (or pairs) in the quantifier range
};

Domain domain_for(Check check, Rank n, const SweepOptions& options) {
    const std::uint64_t half = n >= 1 ? pow2(n - 1) : 0;
    auto single = [](std::uint64_t b, std::uint64_t e) { return Domain{b, e, e > b ? e - b : 0}; };
    switch (check) {
        case Check::th: return single(0, pow2(n) - 1);
        case Check::wth1:
        case Check::wth2:
        case Check::wth3:
            if (options.full_range) return single(1, pow2(n) - 1);
            return single(1, half);
        case Check::uh:
        case Check::weak_uh: {
            const std::uint64_t m = half > 1 ? half - 1 : 0;
            return Domain{1, half, m * (m > 0 ? m - 1 : 0) / 2};
        }
        case Check::lemma59: return single(0, pow2(n - 2));
        case Check::cor510: return single(half, pow2(n));
        default: return single(1, half);
    }
}

Witness violation(std::uint64_t a, std::uint64_t b = 0) {
    Witness w;
    w.a = a;
    w.b = b;
    return w;
}

// --- per-element predicates -------------------------------------------------

std::uint64_t th_kernel(Rank n, std::uint64_t a, const TableTower& tower, std::vector<Witness>& out) {
    const Rank k = tower.period_log2(a, n);
    const std::uint64_t t = tower.at(n).threshold(static_cast<Element>(a));
    const std::uint64_t c = t - 1;
    if (!in_range(c, GammaIndex{k}, tower)) {
        out.push_back(violation(a)
                          .set("n", n)
                          .set("k", k)
                          .set("period", static_cast<std::int64_t>(pow2(k)))
                          .set("threshold", static_cast<std::int64_t>(t))
                          .set("c", static_cast<std::int64_t>(c))
                          .set("p_k(c)", static_cast<std::int64_t>(tower.period(c, k)))
                          .set("p_k+1(c)", static_cast<std::int64_t>(tower.period(c, k + 1))));
    }
    return 1;
}

// The element fed to the range test of a WTH variant, and the rank of
// that test.
struct WthTarget {
    std::uint64_t element;
    Rank gamma;
};

WthTarget wth_target(Check variant, Rank n, std::uint64_t a, std::uint64_t c, const TableTower& tower) {
    switch (variant) {
        case Check::wth: return {c, tower.period_log2(a, n)};
        case Check::wth1: return {tower.apply(n, a, c), n};
        case Check::wth2: return {tower.compose(n, a, c), n};
        case Check::wth3: return {tower.compose(n - 1, a, c), n - 1};
        default: throw std::logic_error("not a WTH variant");
    }
}

std::uint64_t wth_kernel(Check variant, Rank n, std::uint64_t a, const TableTower& tower, bool hypothesis,
                         std::vector<Witness>& out) {
    if (hypothesis && !in_range(a, GammaIndex{n}, tower)) return 0;
    const std::uint64_t c = threshold_c(n, a, tower);
    const auto target = wth_target(variant, n, a, c, tower);
    if (!in_range(target.element, GammaIndex{target.gamma}, tower)) {
        out.push_back(violation(a)
                          .set("n", n)
                          .set("k", tower.period_log2(a, n))
                          .set("c", static_cast<std::int64_t>(c))
                          .set("target", static_cast<std::int64_t>(target.element))
                          .set("gamma", target.gamma));
    }
    return 1;
}

std::uint64_t twin_kernel(Rank n, std::uint64_t a, const TableTower& tower, std::vector<Witness>& out) {
    if (!in_range(a, GammaIndex{n}, tower)) return 0;
    if (!in_range(a, GammaIndex{n - 1}, tower)) {
        out.push_back(violation(a)
                          .set("n", n)
                          .set("p_n-1(a)", static_cast<std::int64_t>(tower.period(a, n - 1)))
                          .set("p_n(a)", static_cast<std::int64_t>(tower.period(a, n)))
                          .set("p_n+1(a)", static_cast<std::int64_t>(tower.period(a, n + 1))));
    }
    return 1;
}

std::uint64_t cor510_kernel(Rank n, std::uint64_t a, const TableTower& tower, std::vector<Witness>& out) {
    if (!in_range(a, GammaIndex{n + 1}, tower)) return 0;
    if (!in_range(a, GammaIndex{n}, tower)) {
        out.push_back(violation(a)
                          .set("n", n)
                          .set("p_n(a)", static_cast<std::int64_t>(tower.period(a, n)))
                          .set("p_n+1(a)", static_cast<std::int64_t>(tower.period(a, n + 1)))
                          .set("p_n+2(a)", static_cast<std::int64_t>(tower.period(a, n + 2))));
    }
    return 1;
}

std::uint64_t lemma53_kernel(Rank n, std::uint64_t a, const TableTower& tower, std::vector<Witness>& out) {
    if (!in_range(a, GammaIndex{n}, tower)) return 0;
    const std::uint64_t c = threshold_c(n, a, tower);
    const auto up = tower.apply(n + 1, a, c);
    const auto mid = tower.apply(n, a, c);
    const auto down = tower.apply(n - 1, a, c);
    const auto comp_up = tower.compose(n + 1, a, c);
    const auto comp_mid = tower.compose(n, a, c);
    if (up != mid || mid != down || comp_up != comp_mid) {
        out.push_back(violation(a)
                          .set("n", n)
                          .set("c", static_cast<std::int64_t>(c))
                          .set("[ac]_n+1", up)
                          .set("[ac]_n", mid)
                          .set("[ac]_n-1", down)
                          .set("[aoc]_n+1", comp_up)
                          .set("[aoc]_n", comp_mid));
    }
    return 1;
}

std::array<bool, 5> lemma54_statements(Rank n, std::uint64_t a, const TableTower& tower) {
    const Rank k = tower.period_log2(a, n);
    const std::uint64_t c = threshold_c(n, a, tower);
    return {
        in_range(c, GammaIndex{k}, tower),
        in_range(tower.apply(n, a, c), GammaIndex{n}, tower),
        in_range(tower.apply(n - 1, a, c), GammaIndex{n}, tower),
        in_range(tower.compose(n, a, c), GammaIndex{n}, tower),
        in_range(tower.compose(n - 1, a, c), GammaIndex{n - 1}, tower),
    };
}

std::uint64_t lemma54_kernel(Rank n, std::uint64_t a, const TableTower& tower, std::vector<Witness>& out) {
    if (!in_range(a, GammaIndex{n}, tower)) return 0;
    const auto s = lemma54_statements(n, a, tower);
    if (!(s[0] == s[1] && s[1] == s[2] && s[2] == s[3] && s[3] == s[4])) {
        out.push_back(violation(a)
                          .set("n", n)
                          .set("i", s[0])
                          .set("ii", s[1])
                          .set("iii", s[2])
                          .set("iv", s[3])
                          .set("v", s[4]));
    }
    return 1;
}

std::uint64_t lemma59_kernel(Rank n, std::uint64_t a, const TableTower& tower, std::vector<Witness>& out) {
    const Rank two_m = n - 2;
    const bool lower = in_range(a, GammaIndex{two_m + 1}, tower);
    const bool upper = in_range(pow2(two_m) + a, GammaIndex{two_m + 2}, tower);
    if (lower != upper) {
        out.push_back(violation(a).set("n", n).set("lower", lower).set("upper", upper));
    }
    return lower ? 1 : 0;
}

// Pairs a < b below 2^{n-1}; `least` is indexed by k.
std::uint64_t uh_kernel(bool weak, Rank n, std::uint64_t a, const TableTower& tower,
                        const std::vector<LeastWitness>& least, std::vector<Witness>& out) {
    const std::uint64_t half = pow2(n - 1);
    const Rank k = tower.period_log2(a, n);
    if (weak && !in_range(a, GammaIndex{n}, tower)) return 0;
    const auto& lw = least[k];
    const Element ac = tower.apply(n, a, lw.c);
    std::uint64_t qualifying = 0;
    for (std::uint64_t b = a + 1; b < half; ++b) {
        if (tower.period_log2(b, n) != k) continue;
        if (weak && !in_range(b, GammaIndex{n}, tower)) continue;
        ++qualifying;
        const Element bc = tower.apply(n, b, lw.c);
        if (ac != bc) continue;
        if (weak) {
            out.push_back(violation(a, b).set("n", n).set("k", k).set("c", static_cast<std::int64_t>(lw.c)).set("[ac]_n", ac));
            continue;
        }
        const auto same = same_action(a, b, lw.i, tower);
        if (same.has_value() && !*same) continue;
        Witness w = violation(a, b);
        if (!same.has_value()) w.kind = Witness::Kind::undecided;
        w.set("n", n).set("k", k).set("c", static_cast<std::int64_t>(lw.c)).set("i", lw.i).set("[ac]_n", ac);
        const auto act_a = act_on_gamma(a, GammaIndex{lw.i}, tower);
        w.set("a.gamma_i", act_a.value.idx).set("certified", act_a.certified);
        out.push_back(std::move(w));
    }
    return qualifying;
}

}  // namespace

std::string_view check_name(Check check) { return info(check).name; }

std::optional<Check> parse_check(std::string_view name) {
    if (name == "weak_uh") return Check::weak_uh;
    for (const auto& entry : kChecks) {
        if (entry.name == name) return entry.check;
    }
    return std::nullopt;
}

const std::vector<Check>& all_checks() {
    static const std::vector<Check> checks = [] {
        std::vector<Check> v;
        for (const auto& entry : kChecks) v.push_back(entry.check);
        return v;
    }();
    return checks;
}

Rank min_rank(Check check) { return info(check).min_rank; }
int rank_parity(Check check) { return info(check).parity; }
Rank required_rank(Check check, Rank n) { return n + info(check).extra_tables; }

std::string_view status_name(Status status) {
    switch (status) {
        case Status::verified: return "verified";
        case Status::counterexample: return "counterexample";
        case Status::resource_limited: return "resource-limited";
    }
    return "unknown";
}

bool wth_holds(Check variant, Rank n, std::uint64_t a, const TableTower& tower) {
    std::vector<Witness> sink;
    wth_kernel(variant, n, a, tower, false, sink);
    return sink.empty();
}

bool table_collision(Rank n, std::uint64_t a, std::uint64_t b, std::uint64_t c, const TableTower& tower) {
    return tower.apply(n, a, c) == tower.apply(n, b, c);
}

VerificationReport verify(Check check, Rank n, const TableTower& tower, const SweepOptions& options) {
    const auto& ci = info(check);
    if (n < ci.min_rank) {
        throw std::invalid_argument(std::string(ci.name) + " needs n >= " + std::to_string(ci.min_rank));
    }
    if (ci.parity == 1 && n % 2 == 0) throw std::invalid_argument(std::string(ci.name) + " is stated for odd n only");
    if (ci.parity == 2 && n % 2 == 1) throw std::invalid_argument(std::string(ci.name) + " is stated for even n only");
    if (n >= kMaxRank) throw std::invalid_argument("rank too large");
    tower.require(required_rank(check, n), "verify " + std::string(ci.name) + " at n=" + std::to_string(n));

    const auto started = std::chrono::steady_clock::now();
    const Domain domain = domain_for(check, n, options);

    std::vector<LeastWitness> least;
    if (check == Check::uh || check == Check::weak_uh) {
        least.resize(n + 1);
        for (Rank k = 1; k <= n; ++k) least[k] = least_witness_with_index(k, tower);
    }

    const bool hypothesis = !options.drop_range_hypothesis;
    auto kernel = [&](std::uint64_t a, std::vector<Witness>& out) -> std::uint64_t {
        switch (check) {
            case Check::th: return th_kernel(n, a, tower, out);
            case Check::wth:
            case Check::wth1:
            case Check::wth2:
            case Check::wth3:
                return wth_kernel(check, n, a, tower, check == Check::wth || hypothesis, out);
            case Check::twin: return twin_kernel(n, a, tower, out);
            case Check::uh: return uh_kernel(false, n, a, tower, least, out);
            case Check::weak_uh: return uh_kernel(true, n, a, tower, least, out);
            case Check::lemma53: return lemma53_kernel(n, a, tower, out);
            case Check::lemma54: return lemma54_kernel(n, a, tower, out);
            case Check::lemma59: return lemma59_kernel(n, a, tower, out);
            case Check::cor510: return cor510_kernel(n, a, tower, out);
        }
        return 0;
    };

    SweepOutcome outcome = sweep(domain.begin, domain.end, options.workers, kernel);

    if (check == Check::lemma59) {
        // The identity 2^{2m} . gamma_{2m+1} = gamma_{2m+2} the lemma rests on.
        const Rank two_m = n - 2;
        const auto image = act_on_gamma(pow2(two_m), GammaIndex{two_m + 1}, tower, n + 1);
        if (!image.certified || image.value.idx != two_m + 2) {
            Witness w = violation(pow2(two_m));
            w.set("n", n).set("identity", 1).set("image", image.value.idx).set("certified", image.certified);
            outcome.witnesses.insert(outcome.witnesses.begin(), std::move(w));
        }
    }

    VerificationReport report;
    report.check = check;
    report.n = n;
    report.elements_checked = domain.size;
    report.qualifying = outcome.qualifying;
    report.full_range = options.full_range && (check == Check::wth1 || check == Check::wth2 || check == Check::wth3);
    for (auto& w : outcome.witnesses) {
        if (w.kind == Witness::Kind::violation) {
            ++report.violations;
        } else {
            ++report.undecided;
        }
    }
    // Violations first, then undecided instances, each in (a, b) order.
    std::stable_partition(outcome.witnesses.begin(), outcome.witnesses.end(),
                          [](const Witness& w) { return w.kind == Witness::Kind::violation; });
    if (!options.exhaustive && outcome.witnesses.size() > options.max_reported) {
        outcome.witnesses.resize(options.max_reported);
    }
    report.counterexamples = std::move(outcome.witnesses);
    if (report.violations > 0) {
        report.status = Status::counterexample;
    } else if (report.undecided > 0) {
        report.status = Status::resource_limited;
    } else {
        report.status = Status::verified;
    }
    report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return report;
}

bool revalidate(Check check, Rank n, const Witness& witness, const TableTower& tower, const SweepOptions& options) {
    if (witness.kind != Witness::Kind::violation) return false;
    const std::uint64_t a = witness.a;
    const std::uint64_t b = witness.b;
    const std::uint64_t half = pow2(n - 1);
    const LaverTable& table = tower.at(n);
    switch (check) {
        case Check::th: {
            if (a >= table.size() - 1) return false;
            const unsigned k = table.period_log2(static_cast<Element>(a));
            const std::uint64_t c = table.threshold(static_cast<Element>(a)) - 1;
            return tower.period(c, k + 1) != 2 * tower.period(c, k);
        }
        case Check::wth:
        case Check::wth1:
        case Check::wth2:
        case Check::wth3: {
            const std::uint64_t limit = (check != Check::wth && options.full_range) ? table.size() - 1 : half;
            if (a == 0 || a >= limit) return false;
            const bool hypothesis = check == Check::wth || !options.drop_range_hypothesis;
            if (hypothesis && tower.period(a, n + 1) != 2 * tower.period(a, n)) return false;
            return !wth_holds(check, n, a, tower);
        }
        case Check::twin:
            return a >= 1 && a < half && tower.period(a, n + 1) == 2 * tower.period(a, n) &&
                   tower.period(a, n) == tower.period(a, n - 1);
        case Check::cor510:
            return a >= half && a < table.size() && tower.period(a, n + 2) == 2 * tower.period(a, n + 1) &&
                   tower.period(a, n + 1) == tower.period(a, n);
        case Check::lemma53: {
            if (a == 0 || a >= half || !in_range(a, GammaIndex{n}, tower)) return false;
            const std::uint64_t c = threshold_c(n, a, tower);
            const auto mid = tower.apply(n, a, c);
            return tower.apply(n + 1, a, c) != mid || tower.apply(n - 1, a, c) != mid ||
                   tower.compose(n + 1, a, c) != tower.compose(n, a, c);
        }
        case Check::lemma54: {
            if (a == 0 || a >= half || !in_range(a, GammaIndex{n}, tower)) return false;
            const auto s = lemma54_statements(n, a, tower);
            return !(s[0] == s[1] && s[1] == s[2] && s[2] == s[3] && s[3] == s[4]);
        }
        case Check::lemma59: {
            const Rank two_m = n - 2;
            if (witness.get("identity")) {
                const auto image = act_on_gamma(pow2(two_m), GammaIndex{two_m + 1}, tower, n + 1);
                return !image.certified || image.value.idx != two_m + 2;
            }
            if (a >= pow2(two_m)) return false;
            return in_range(a, GammaIndex{two_m + 1}, tower) != in_range(pow2(two_m) + a, GammaIndex{two_m + 2}, tower);
        }
        case Check::uh:
        case Check::weak_uh: {
            if (a == 0 || a >= b || b >= half) return false;
            const unsigned k = table.period_log2(static_cast<Element>(a));
            if (table.period_log2(static_cast<Element>(b)) != k) return false;
            const auto lw = least_witness_with_index(k, tower);
            if (table.apply(static_cast<Element>(a), lw.c) != table.apply(static_cast<Element>(b), lw.c)) return false;
            if (check == Check::weak_uh) {
                return in_range(a, GammaIndex{n}, tower) && in_range(b, GammaIndex{n}, tower);
            }
            const auto same = same_action(a, b, lw.i, tower);
            return same.value_or(false);
        }
    }
    return false;
}

}  // namespace laver
