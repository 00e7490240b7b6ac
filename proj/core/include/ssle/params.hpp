#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace ssle {

enum class RngMode { TrueRandom, SyntheticCoins };

/// All population and protocol constants. Every timer cap and space size used
/// by the transition function is derived here and nowhere else; the protocol
/// code never computes a cap on its own.
///
/// Caps are of the form ceil(c * f(n, r) * ln n) with the multiplicative
/// constants exposed as fields (defaults documented in docs/PARAMETERS.md).
/// Logarithms are natural throughout.
struct Params {
    int n = 0;  ///< population size
    int r = 0;  ///< trade-off parameter, 1 <= r <= n/2

    // Tunable constants behind the Theta(.) caps.
    double cCountdown = 40.0;  ///< countdown = cCountdown * (n/r) * ln n
    double cProb = 40.0;       ///< probation  = cProb * (n/r) * ln n
    double cSig = 8.0;         ///< signature refresh = cSig * ln(group size)
    double cSleep = 20.0;      ///< sleep cap  = cSleep * ln n
    double cLE = 15.0;         ///< election timer = cLE * ln n
    double cDelay = 75.0;      ///< dormancy delay = cDelay * ln n; must dominate
                               ///< the 60 ln n reset countdown so dormant agents
                               ///< outwait the stragglers
    double cPool = 2.0;        ///< label pool = cPool * n / r, cPool > 1

    RngMode rngMode = RngMode::TrueRandom;

    // Overrides for model-checking-scale tests; 0 means "use the default
    // formula" (signature space group^5, ids per rank 2*group^2).
    std::uint32_t sigSpaceOverride = 0;
    int idsPerRankOverride = 0;
    int sigRefreshOverride = 0;

    Params() = default;
    Params(int n_, int r_) : n(n_), r(r_) {}

    // Derived caps.
    int cMax() const { return capCeil(cCountdown * ratio() * logN()); }
    int pMax() const { return capCeil(cProb * ratio() * logN()); }
    int rMax() const { return capCeil(60.0 * logN()); }
    int dMax() const { return capCeil(cDelay * logN()); }
    int sleepMax() const { return capCeil(cSleep * logN()); }
    int leCountCap() const { return capCeil(cLE * logN()); }
    int labelPool() const { return capCeil(cPool * static_cast<double>(n) / r); }
    std::int64_t idSpace() const {
        return static_cast<std::int64_t>(n) * n * n;
    }

    /// Signature/content range for a group of the given size.
    std::uint32_t sigSpaceFor(int groupSize) const {
        if (sigSpaceOverride != 0) return sigSpaceOverride;
        double s = std::pow(static_cast<double>(groupSize), 5.0);
        if (s > 4294967295.0)
            throw std::invalid_argument("signature space exceeds 32 bits; population too large");
        return static_cast<std::uint32_t>(s) < 2u ? 2u : static_cast<std::uint32_t>(s);
    }

    /// Circulating-message IDs per rank for a group of the given size.
    int idsPerRankFor(int groupSize) const {
        if (idsPerRankOverride != 0) return idsPerRankOverride;
        return 2 * groupSize * groupSize;
    }

    /// Interactions between signature resamples for a group of the given size.
    int sigRefreshFor(int groupSize) const {
        if (sigRefreshOverride != 0) return sigRefreshOverride;
        int v = capCeil(cSig * std::log(static_cast<double>(groupSize)));
        return v < 2 ? 2 : v;
    }

    /// Throws std::invalid_argument when any invariant is violated.
    void validate() const;

    double logN() const { return std::log(static_cast<double>(n)); }

private:
    double ratio() const { return static_cast<double>(n) / r; }

    static int capCeil(double x) {
        double c = std::ceil(x);
        return c < 1.0 ? 1 : static_cast<int>(c);
    }
};

}  // namespace ssle
