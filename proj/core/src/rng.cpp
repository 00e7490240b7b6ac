#include "ssle/rng.hpp"

#include <stdexcept>

namespace ssle {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t trialSeed(std::uint64_t masterSeed, std::uint64_t trialIndex) {
    return splitmix64(masterSeed + (trialIndex + 1) * 0x9e3779b97f4a7c15ULL);
}

std::uint64_t RandomStream::below(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("RandomStream::below: bound must be positive");
    if (bound == 1) return 0;
    // Rejection sampling over the largest multiple of bound.
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x;
    do {
        x = next();
    } while (x >= limit);
    return x % bound;
}

int coinBits(std::int64_t maxN) {
    if (maxN < 1) throw std::invalid_argument("coinBits: range must be positive");
    int bits = 0;
    std::int64_t span = 1;
    while (span < maxN) {
        span <<= 1;
        ++bits;
    }
    return bits < 1 ? 1 : bits;
}

CoinState makeCoinState(std::int64_t maxN) {
    CoinState s;
    s.coins.assign(static_cast<std::size_t>(coinBits(maxN)), 0);
    return s;
}

CoinState tickCoin(const CoinState& self, std::uint8_t partnerCoinBit) {
    CoinState next = self;
    next.coin = static_cast<std::uint8_t>(1 - self.coin);
    next.coins[static_cast<std::size_t>(self.coinCount)] = partnerCoinBit ? 1 : 0;
    next.coinCount = (self.coinCount + 1) % static_cast<int>(self.coins.size());
    return next;
}

std::int64_t coinDraw(const CoinState& state, std::int64_t n) {
    if (n <= 1) return 1;
    std::uint64_t value = 0;
    for (std::size_t i = 0; i < state.coins.size(); ++i) {
        value |= static_cast<std::uint64_t>(state.coins[i] & 1u) << i;
    }
    return static_cast<std::int64_t>(value % static_cast<std::uint64_t>(n)) + 1;
}

DrawFn makeDrawFn(RngMode mode, RandomStream& stream, CoinState* initiatorCoins,
                  CoinState* responderCoins) {
    if (mode == RngMode::TrueRandom) {
        return [&stream](std::int64_t n, int) { return stream.uniform(n); };
    }
    return [initiatorCoins, responderCoins](std::int64_t n, int slot) {
        const CoinState* coins = slot == 0 ? initiatorCoins : responderCoins;
        return coinDraw(*coins, n);
    };
}

}  // namespace ssle
