#pragma once

#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>

namespace idp {

/// Fixed-capacity bit set used for transactions and itemsets. 128 items is
/// well above the 50-item vocabulary; the miner rejects anything larger.
class ItemMask {
public:
    static constexpr std::size_t kCapacity = 128;

    constexpr ItemMask() = default;

    constexpr void set(std::size_t i, bool value = true) noexcept {
        const std::uint64_t bit = std::uint64_t{1} << (i & 63);
        if (value) {
            words_[i >> 6] |= bit;
        } else {
            words_[i >> 6] &= ~bit;
        }
    }
    constexpr bool test(std::size_t i) const noexcept { return (words_[i >> 6] >> (i & 63)) & 1U; }
    constexpr void reset(std::size_t i) noexcept { set(i, false); }

    constexpr bool contains(const ItemMask& other) const noexcept {
        return (other.words_[0] & ~words_[0]) == 0 && (other.words_[1] & ~words_[1]) == 0;
    }
    constexpr bool empty() const noexcept { return (words_[0] | words_[1]) == 0; }
    constexpr std::size_t count() const noexcept {
        return static_cast<std::size_t>(std::popcount(words_[0]) + std::popcount(words_[1]));
    }

    template <class Fn>
    constexpr void for_each(Fn&& fn) const {
        for (std::size_t w = 0; w < words_.size(); ++w) {
            std::uint64_t bits = words_[w];
            while (bits != 0) {
                const int b = std::countr_zero(bits);
                fn(w * 64 + static_cast<std::size_t>(b));
                bits &= bits - 1;
            }
        }
    }

    constexpr ItemMask operator|(const ItemMask& o) const noexcept {
        ItemMask r;
        r.words_ = {words_[0] | o.words_[0], words_[1] | o.words_[1]};
        return r;
    }
    constexpr ItemMask operator&(const ItemMask& o) const noexcept {
        ItemMask r;
        r.words_ = {words_[0] & o.words_[0], words_[1] & o.words_[1]};
        return r;
    }
    constexpr ItemMask without(std::size_t i) const noexcept {
        ItemMask r = *this;
        r.reset(i);
        return r;
    }

    constexpr bool operator==(const ItemMask&) const = default;
    constexpr auto operator<=>(const ItemMask&) const = default;

    constexpr std::uint64_t word(std::size_t w) const noexcept { return words_[w]; }

private:
    std::array<std::uint64_t, 2> words_{};
};

struct ItemMaskHash {
    std::size_t operator()(const ItemMask& m) const noexcept {
        std::uint64_t h = m.word(0) * 0x9E3779B97F4A7C15ULL;
        h ^= m.word(1) + 0x632BE59BD9B4E019ULL + (h << 6) + (h >> 2);
        return std::hash<std::uint64_t>{}(h);
    }
};

} // namespace idp
