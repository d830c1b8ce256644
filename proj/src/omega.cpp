#include "laver/omega.hpp"

#include <algorithm>
#include <exception>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace laver {
namespace {

std::string describe(Rank n) { return "interval (gamma_" + std::to_string(n) + ", gamma_" + std::to_string(n + 1) + ")"; }

// c . gamma_k with the lower-bound rule: an uncertified index above
// `ceiling` is as good as certified for callers that reject anything
// above it.
std::optional<GammaIndex> act_within(std::uint64_t c, GammaIndex k, Rank ceiling, const TableTower& tower) {
    const auto r = act_on_gamma(c, k, tower);
    if (r.certified) return r.value;
    if (r.value.idx > ceiling) return std::nullopt;
    throw UncertifiedError("cannot decide " + std::to_string(c) + " . gamma_" + std::to_string(k.idx) +
                           " with tables through A_" + std::to_string(r.bound) + "; build larger tables");
}

}  // namespace

std::optional<OrdinalRep> image(std::uint64_t c, const OrdinalRep& x, Rank interval, const TableTower& tower) {
    tower.require(interval + 1, "image");
    if (const auto* cp = std::get_if<CritPoint>(&x)) {
        // Anything above gamma_{interval+1} is outside the target range.
        const auto m = act_within(c, cp->gamma, interval + 1, tower);
        if (!m) return std::nullopt;
        return CritPoint{*m};
    }
    const auto& p = std::get<PairRep>(x);
    const std::uint64_t d = tower.apply(interval + 1, c, p.coef);
    // A coefficient of 0 or in [2^n, 2^{n+1}) never names an ordinal of
    // [gamma_n, gamma_{n+1}).
    if (d == 0 || d >= (std::uint64_t{1} << interval)) return std::nullopt;
    const auto m = act_within(c, p.cof, interval, tower);
    if (!m) return std::nullopt;
    return PairRep{d, *m, interval};
}

std::optional<Candidate> next_candidate(const OrdinalRep& current, Rank n, const std::vector<OrdinalRep>& specials,
                                        const TableTower& tower, int workers) {
    if (specials.size() < n) throw std::invalid_argument("specials below gamma_1..gamma_n are required");
    const std::uint64_t top = (std::uint64_t{1} << n) - 1;

    auto matching_j = [&](std::uint64_t c) {
        std::vector<Rank> js;
        for (Rank j = 1; j <= n; ++j) {
            const auto img = image(c, specials[j - 1], n, tower);
            if (img && *img == current) js.push_back(j);
        }
        return js;
    };

    std::uint64_t best = 0;
#ifdef _OPENMP
    if (workers >= 1) {
        std::exception_ptr failure;
        const auto count = static_cast<std::int64_t>(top);
#pragma omp parallel for num_threads(workers) schedule(dynamic, 16) reduction(max : best)
        for (std::int64_t i = 0; i < count; ++i) {
            const auto c = static_cast<std::uint64_t>(count - i);
            if (c <= best) continue;
            try {
                if (!matching_j(c).empty()) best = std::max(best, c);
            } catch (...) {
#pragma omp critical(laver_omega_failure)
                if (!failure) failure = std::current_exception();
            }
        }
        if (failure) std::rethrow_exception(failure);
    } else
#endif
    {
        (void)workers;
        for (std::uint64_t c = top; c >= 1 && best == 0; --c) {
            if (!matching_j(c).empty()) best = c;
        }
    }
    if (best == 0) return std::nullopt;

    const auto js = matching_j(best);
    if (js.size() != 1) {
        throw EnumerationError("ambiguous successor in " + describe(n) + ": coefficient " + std::to_string(best) +
                               " matches " + std::to_string(js.size()) + " cofinalities");
    }
    return Candidate{best, js.front()};
}

IntervalEnumeration enumerate_interval(Rank n, const std::vector<OrdinalRep>& specials, const TableTower& tower,
                                       int workers) {
    if (n == 0) throw std::invalid_argument("intervals start at n = 1");
    tower.require(n + 1, "enumerate_interval");
    IntervalEnumeration result;
    result.n = n;
    OrdinalRep current = CritPoint{GammaIndex{n}};
    const std::uint64_t cap = std::uint64_t{1} << n;
    for (std::uint64_t step = 0;; ++step) {
        if (step > cap) throw EnumerationError(describe(n) + " did not terminate within 2^n steps");
        const auto next = next_candidate(current, n, specials, tower, workers);
        if (!next) break;
        PairRep entry{next->c, GammaIndex{next->j}, n};
        result.entries.push_back(entry);
        current = entry;
    }
    if (result.entries.empty()) throw EnumerationError(describe(n) + " has no least element above gamma_n");
    return result;
}

OmegaEnumerator::OmegaEnumerator(const TableTower& tower, int workers) : tower_(tower), workers_(workers) {}

const IntervalEnumeration& OmegaEnumerator::interval(Rank n) {
    if (n == 0) throw std::invalid_argument("intervals start at n = 1");
    if (auto it = intervals_.find(n); it != intervals_.end()) return it->second;
    std::vector<OrdinalRep> specials;
    specials.reserve(n);
    for (Rank m = 1; m <= n; ++m) specials.push_back(special_below(m));
    return intervals_.emplace(n, enumerate_interval(n, specials, tower_, workers_)).first->second;
}

OrdinalRep OmegaEnumerator::special_below(Rank m) {
    if (m == 0) throw std::invalid_argument("there is no ordinal below gamma_0");
    if (m == 1) return CritPoint{GammaIndex{0}};
    return interval(m - 1).special();
}

bool OmegaEnumerator::is_special(const PairRep& x) {
    const auto& iv = interval(x.interval);
    const auto it = std::find(iv.entries.begin(), iv.entries.end(), x);
    if (it == iv.entries.end()) {
        throw std::invalid_argument(to_text(x) + " is not an ordinal of " + describe(x.interval));
    }
    return std::next(it) == iv.entries.end();
}

std::vector<OrdinalRep> enumerate_below(Rank limit, const TableTower& tower, int workers) {
    if (limit == 0) throw std::invalid_argument("enumerate_below needs N >= 1");
    tower.require(limit + 1, "enumerate_below");
    OmegaEnumerator enumerator(tower, workers);
    std::vector<OrdinalRep> out;
    out.push_back(CritPoint{GammaIndex{0}});
    for (Rank n = 1; n < limit; ++n) {
        out.push_back(CritPoint{GammaIndex{n}});
        for (const auto& entry : enumerator.interval(n).entries) out.push_back(entry);
    }
    return out;
}

std::string to_text(const OrdinalRep& x) {
    if (const auto* cp = std::get_if<CritPoint>(&x)) return "\xce\xb3_" + std::to_string(cp->gamma.idx);
    const auto& p = std::get<PairRep>(x);
    return std::to_string(p.coef) + "\"\xce\xb3_" + std::to_string(p.cof.idx);
}

std::string render_text(const std::vector<OrdinalRep>& ordinals) {
    std::string out;
    for (const auto& x : ordinals) {
        out += to_text(x);
        out += '\n';
    }
    return out;
}

nlohmann::json to_json(const OrdinalRep& x) {
    if (const auto* cp = std::get_if<CritPoint>(&x)) return {{"kind", "crit"}, {"gamma", cp->gamma.idx}};
    const auto& p = std::get<PairRep>(x);
    return {{"kind", "pair"}, {"coef", p.coef}, {"gamma", p.cof.idx}, {"interval", p.interval}};
}

nlohmann::json render_json(const std::vector<OrdinalRep>& ordinals) {
    auto list = nlohmann::json::array();
    for (const auto& x : ordinals) list.push_back(to_json(x));
    return list;
}

}  // namespace laver
