#pragma once

#include <cstdint>
#include <string>

namespace psdist {

/// Outcome of a seeded batch of random instances of one inequality.
struct LemmaCheckResult {
    std::string check;
    std::uint64_t seed = 0;
    std::uint64_t trials = 0;
    std::uint64_t holds = 0;  // instances with ratio <= constant
    double constant = 1.0;
    double max_ratio = 0.0;
};

/// Weyl-van der Corput shift: random complex sequences of length 2..512 with 1 <= Q <= length/2.
LemmaCheckResult lemma_check_weyl(std::uint64_t trials, std::uint64_t seed);
/// Second-derivative test on quadratic phases, implied constant taken as 1.
LemmaCheckResult lemma_check_vdc(std::uint64_t trials, std::uint64_t seed);
/// |psi(t) - truncation| / min(1, 1/(M‖t‖)) for M in [2, 10^4], against 1.1.
LemmaCheckResult lemma_check_psi(std::uint64_t trials, std::uint64_t seed);
/// Truncated expansion of F_delta against its two-term envelope, against 1.1.
LemmaCheckResult lemma_check_fourier(std::uint64_t trials, std::uint64_t seed);

/// Dispatch by name ("weyl", "vdc", "psi", "fourier"); InvalidConfig otherwise.
LemmaCheckResult run_lemma_check(const std::string& name, std::uint64_t trials, std::uint64_t seed);

}  // namespace psdist
