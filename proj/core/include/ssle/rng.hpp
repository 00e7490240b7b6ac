#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "ssle/params.hpp"

namespace ssle {

/// Stateless mixer used to derive per-trial seeds from a master seed.
/// trialSeed(s, i) is the documented splitting rule referenced by the CSV
/// schema: splitmix64 applied to s + (i+1) * golden gamma.
std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t trialSeed(std::uint64_t masterSeed, std::uint64_t trialIndex);

/// Seeded pseudo-random stream (the TrueRandom backend). Bounded draws use
/// rejection sampling on top of mt19937_64 so results do not depend on the
/// standard library's distribution implementations.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform on {0, ..., bound-1}, exact.
    std::uint64_t below(std::uint64_t bound);

    /// Uniform on [N] = {1, ..., N}.
    std::int64_t uniform(std::int64_t n) {
        return static_cast<std::int64_t>(below(static_cast<std::uint64_t>(n))) + 1;
    }

    double uniform01() {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

private:
    std::mt19937_64 engine_;
};

/// Per-agent synthetic-coin state: one broadcast coin plus a cyclic buffer of
/// bits harvested from interaction partners.
struct CoinState {
    std::uint8_t coin = 0;
    std::vector<std::uint8_t> coins;  // fixed length ceil(log2 N)
    int coinCount = 0;                // cyclic, < coins.size()

    bool operator==(const CoinState&) const = default;
};

/// Coin buffer length for a draw range of size maxN.
int coinBits(std::int64_t maxN);

CoinState makeCoinState(std::int64_t maxN);

/// One synthetic-coin update: complement own coin, store the partner's
/// pre-interaction coin bit at the cursor, advance the cursor cyclically.
/// Pure function of (state, partner bit).
CoinState tickCoin(const CoinState& self, std::uint8_t partnerCoinBit);

/// Read the coin buffer as a binary number and reduce into [N] = {1..N}.
/// Modular reduction keeps every value within the almost-uniform band
/// [1/(2N), 2/N] once the population's coins are mixed.
std::int64_t coinDraw(const CoinState& state, std::int64_t n);

/// Draw facade handed to the transition function. `slot` identifies which of
/// the two interacting agents draws (0 = initiator, 1 = responder); the
/// synthetic-coin backend routes the draw to that agent's coin state, and the
/// exhaustive-exploration oracle substitutes enumerated outcomes.
using DrawFn = std::function<std::int64_t(std::int64_t n, int slot)>;

/// DrawFn over the given backends. In TrueRandom mode all draws come from the
/// stream; in SyntheticCoins mode the coin states must be non-null.
DrawFn makeDrawFn(RngMode mode, RandomStream& stream, CoinState* initiatorCoins,
                  CoinState* responderCoins);

}  // namespace ssle
