#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "laver/crit.hpp"
#include "laver/tower.hpp"
#include "laver/witness.hpp"

namespace laver {

enum class Check {
    th,       // threshold hypothesis
    wth,      // weak threshold hypothesis
    wth1,     // gamma_n in range([ac]_n)
    wth2,     // gamma_n in range([a o c]_n)
    wth3,     // gamma_{n-1} in range([a o c]_{n-1})
    twin,     // odd n: gamma_n in range(a) => gamma_{n-1} in range(a)
    uh,       // uniqueness hypothesis
    weak_uh,  // uniqueness with gamma_n in both ranges and the least c
    lemma53,  // [ac]_{n+1} = [ac]_n = [ac]_{n-1}, [a o c]_{n+1} = [a o c]_n
    lemma54,  // the five WTH reformulations agree element by element
    lemma59,  // even n = 2m+2: gamma_{2m+1} in range(a) iff gamma_{2m+2} in range(2^{2m}+a)
    cor510,   // odd n, 2^{n-1} <= a < 2^n: gamma_{n+1} in range(a) => gamma_n in range(a)
};

std::string_view check_name(Check check);
std::optional<Check> parse_check(std::string_view name);
const std::vector<Check>& all_checks();

// Smallest rank n for which the check is meaningful, and whether it only
// applies to odd (1) or even (2) ranks; 0 = any.
Rank min_rank(Check check);
int rank_parity(Check check);

// Highest table rank the check needs at rank n.
Rank required_rank(Check check, Rank n);

enum class Status { verified, counterexample, resource_limited };
std::string_view status_name(Status status);

struct SweepOptions {
    // 0 runs the serial reference sweep, >= 1 the OpenMP sweep.
    int workers = 1;
    // Counterexamples kept in the report unless exhaustive is set.
    std::size_t max_reported = 100;
    bool exhaustive = false;
    // WTH1-3 over 1 <= a < 2^n - 1 instead of 1 <= a < 2^{n-1}.
    bool full_range = false;
    // WTH1-3 without the hypothesis gamma_n in range(a); only useful to
    // show that the hypothesis is needed.
    bool drop_range_hypothesis = false;
};

struct VerificationReport {
    Check check = Check::th;
    Rank n = 0;
    Status status = Status::verified;
    std::vector<Witness> counterexamples;  // canonical (a, b) order, possibly truncated
    std::uint64_t violations = 0;          // total, before truncation
    std::uint64_t undecided = 0;
    std::uint64_t elements_checked = 0;    // size of the swept domain
    std::uint64_t qualifying = 0;          // instances meeting the hypothesis
    bool full_range = false;
    double wall_seconds = 0.0;
};

// Runs the named check at rank n. Fails fast with MissingTableError when
// the tower does not reach required_rank(check, n), and with
// std::invalid_argument for ranks the check does not apply to.
VerificationReport verify(Check check, Rank n, const TableTower& tower, const SweepOptions& options = {});

inline VerificationReport verify_th(Rank n, const TableTower& t, const SweepOptions& o = {}) {
    return verify(Check::th, n, t, o);
}
inline VerificationReport verify_twin(Rank n, const TableTower& t, const SweepOptions& o = {}) {
    return verify(Check::twin, n, t, o);
}
inline VerificationReport verify_uh(Rank n, const TableTower& t, const SweepOptions& o = {}) {
    return verify(Check::uh, n, t, o);
}
inline VerificationReport verify_weak_uh(Rank n, const TableTower& t, const SweepOptions& o = {}) {
    return verify(Check::weak_uh, n, t, o);
}
inline VerificationReport check_lemma53(Rank n, const TableTower& t, const SweepOptions& o = {}) {
    return verify(Check::lemma53, n, t, o);
}

// Replays a reported violation through the table primitives. Returns true
// only if the violation is reproduced exactly.
bool revalidate(Check check, Rank n, const Witness& witness, const TableTower& tower,
                const SweepOptions& options = {});

// Per-element WTH outcome (true = conclusion holds) for a with
// gamma_n in range(a), 1 <= a < 2^n - 1. Used for the variant agreement
// check.
bool wth_holds(Check variant, Rank n, std::uint64_t a, const TableTower& tower);

// [ac]_n == [bc]_n for the given c; the collision the uniqueness checks
// look for.
bool table_collision(Rank n, std::uint64_t a, std::uint64_t b, std::uint64_t c, const TableTower& tower);

}  // namespace laver
