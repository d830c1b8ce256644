#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

#include "laver/crit.hpp"
#include "laver/tower.hpp"

namespace laver {

// The critical point gamma_n.
struct CritPoint {
    GammaIndex gamma;
    friend bool operator==(const CritPoint&, const CritPoint&) = default;
};

// coef"gamma_cof, an ordinal strictly between gamma_interval and
// gamma_{interval+1}.
struct PairRep {
    std::uint64_t coef = 0;
    GammaIndex cof;
    Rank interval = 0;
    friend bool operator==(const PairRep&, const PairRep&) = default;
};

using OrdinalRep = std::variant<CritPoint, PairRep>;

class EnumerationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Image of x under the embedding c, landing in interval `interval`:
//   c . gamma_m            = gamma_{c . m}
//   c . (e"gamma_l)        = [c*e]_{interval+1} " (c . gamma_l)
// Returns nullopt when the image cannot be an ordinal of that interval
// (coefficient 0 or >= 2^interval). Throws UncertifiedError when the
// tables are too shallow to decide.
std::optional<OrdinalRep> image(std::uint64_t c, const OrdinalRep& x, Rank interval, const TableTower& tower);

struct IntervalEnumeration {
    Rank n = 0;
    std::vector<PairRep> entries;  // increasing ordinals, decreasing coefficients
    const PairRep& special() const { return entries.back(); }
};

// Builds the intervals (gamma_n, gamma_{n+1}) bottom-up. Interval n needs
// the special ordinals below gamma_1..gamma_n and tables through A_{n+1}.
class OmegaEnumerator {
public:
    // workers == 0 scans candidates serially; otherwise OpenMP.
    explicit OmegaEnumerator(const TableTower& tower, int workers = 1);

    const IntervalEnumeration& interval(Rank n);

    // The special ordinal below gamma_m (m >= 1); gamma_0 below gamma_1.
    OrdinalRep special_below(Rank m);

    // True iff x is the last entry of its interval. Throws
    // std::invalid_argument when x does not occur in its interval.
    bool is_special(const PairRep& x);

private:
    const TableTower& tower_;
    int workers_;
    std::map<Rank, IntervalEnumeration> intervals_;
};

// One step of the enumeration: given the current ordinal of interval n and
// the specials below gamma_1..gamma_n (index j-1 holds the one below
// gamma_j), the largest c < 2^n and its j with c . special_j = current.
struct Candidate {
    std::uint64_t c;
    Rank j;
};
std::optional<Candidate> next_candidate(const OrdinalRep& current, Rank n, const std::vector<OrdinalRep>& specials,
                                        const TableTower& tower, int workers);

IntervalEnumeration enumerate_interval(Rank n, const std::vector<OrdinalRep>& specials, const TableTower& tower,
                                       int workers = 1);

// gamma_0, gamma_1, interval 1, gamma_2, ..., gamma_{N-1}, interval N-1.
std::vector<OrdinalRep> enumerate_below(Rank limit, const TableTower& tower, int workers = 1);

std::string to_text(const OrdinalRep& x);
// One ordinal per line, each line terminated by '\n'.
std::string render_text(const std::vector<OrdinalRep>& ordinals);
nlohmann::json to_json(const OrdinalRep& x);
nlohmann::json render_json(const std::vector<OrdinalRep>& ordinals);

}  // namespace laver
