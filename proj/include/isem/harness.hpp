#pragma once

#include "isem/semantics.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace isem {

enum class IeeeBackend {
    softfloat, // exact rational result plus round(); any format
    native,    // host double arithmetic under fesetround(); binary64 only
};

// IEEE 754 result of `a op b` under `dir`, special cases included
// (0*inf, inf-inf, 0/0 and inf/inf give NaN; x/0 gives a signed infinity).
Fp ieee_reference(const Fp& a, const Fp& b, OpKind op, RoundingDirection dir,
                  IeeeBackend backend = IeeeBackend::softfloat);

// Whether the host lets us switch rounding direction for binary64.
bool native_backend_available();

const char* to_string(RoundingDirection dir);

struct DiffCase {
    enum class Verdict { match, mismatch, ieee_nan };

    Fp a;
    Fp b;
    OpKind op;
    RoundingDirection direction;
    Fp ieee_result;
    Fp interval_bound;
    Verdict verdict;
};

std::string to_string(const DiffCase& c);

// Deterministic binary64 operand stream: a fixed adversarial set first
// (+-0, +-m, +-M, +-1, powers of two, subnormal boundary), then bit patterns
// drawn uniformly. `finite_only` drops infinities and NaN; NaN is never
// produced otherwise either unless `allow_nan`.
class Binary64Sampler {
public:
    explicit Binary64Sampler(std::uint64_t seed, bool finite_only = true, bool allow_nan = false);
    Fp next();

private:
    std::mt19937_64 rng_;
    std::vector<Fp> fixed_;
    std::size_t fixed_pos_ = 0;
    bool finite_only_;
    bool allow_nan_;
};

inline constexpr std::uint64_t kDefaultSeed = 0x5eed2024;

struct SampleSpec {
    // Exhaustive for enumerable formats; otherwise `samples` random pairs per op.
    std::uint64_t samples = 10000;
    std::uint64_t seed = kDefaultSeed;
};

struct TheoremSummary {
    std::uint64_t cases = 0;
    std::uint64_t mismatches = 0;
    std::vector<DiffCase> counterexamples; // first few only

    bool passed() const { return mismatches == 0; }
};

// Bounds from interval semantics against IEEE 754 directed rounding for
// finite operands (nonzero under finite-precision zeros; zero divisors are
// excluded for division).
TheoremSummary run_theorem_suite(const FloatFormat& f, ZeroMode mode, const std::vector<OpKind>& ops,
                                 const SampleSpec& spec = {});

struct DeviationRow {
    std::string identity;
    std::string pattern;
    Fp lhs;
    Fp rhs;
    OpKind op;
    ZeroMode mode;
    Fp ieee_down;
    Fp ieee_up;
    ExtInterval interval;
    Conformance classification;
    std::optional<Conformance> claim;

    bool agrees_with_claim() const { return !claim || *claim == classification; }
};

// One row per (catalog identity in `mode`, sample operand). Parameterised
// identities get a handful of spread-out samples.
std::vector<DeviationRow> deviation_report(const FloatFormat& f, ZeroMode mode);

struct BackendAgreement {
    std::uint64_t cases = 0;
    std::uint64_t disagreements = 0;
    std::vector<DiffCase> examples;
};

// softfloat vs native ieee_reference on `pairs` seeded binary64 pairs per op
// and directed rounding. Requires native_backend_available().
BackendAgreement compare_backends(std::uint64_t pairs, std::uint64_t seed, bool finite_only = false);

} // namespace isem
