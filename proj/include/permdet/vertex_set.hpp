#pragma once

#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace permdet {

/// Fixed-width set of 0-based vertex indices. The bit pattern doubles as a hash/cache key.
template <std::size_t Words>
class BasicVertexSet {
public:
    static constexpr std::size_t capacity = Words * 64;

    constexpr BasicVertexSet() = default;
    BasicVertexSet(std::initializer_list<int> members) {
        for (int v : members) insert(v);
    }

    static BasicVertexSet from_labels(const std::vector<int>& labels) {
        BasicVertexSet s;
        for (int l : labels) s.insert(l - 1);
        return s;
    }

    /// {0, ..., n-1}
    static BasicVertexSet first(std::size_t n) {
        check(n == 0 ? 0 : static_cast<int>(n - 1));
        BasicVertexSet s;
        for (std::size_t w = 0; w < Words && n > 0; ++w) {
            std::size_t take = n < 64 ? n : 64;
            s.bits_[w] = take == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << take) - 1);
            n -= take;
        }
        return s;
    }

    void insert(int v) {
        check(v);
        bits_[static_cast<std::size_t>(v) / 64] |= std::uint64_t{1} << (v % 64);
    }
    void erase(int v) {
        check(v);
        bits_[static_cast<std::size_t>(v) / 64] &= ~(std::uint64_t{1} << (v % 64));
    }
    bool contains(int v) const {
        if (v < 0 || static_cast<std::size_t>(v) >= capacity) return false;
        return (bits_[static_cast<std::size_t>(v) / 64] >> (v % 64)) & 1U;
    }

    std::size_t size() const noexcept {
        std::size_t c = 0;
        for (auto w : bits_) c += static_cast<std::size_t>(std::popcount(w));
        return c;
    }
    bool empty() const noexcept {
        for (auto w : bits_)
            if (w) return false;
        return true;
    }

    bool intersects(const BasicVertexSet& o) const noexcept {
        for (std::size_t w = 0; w < Words; ++w)
            if (bits_[w] & o.bits_[w]) return true;
        return false;
    }
    bool subset_of(const BasicVertexSet& o) const noexcept {
        for (std::size_t w = 0; w < Words; ++w)
            if (bits_[w] & ~o.bits_[w]) return false;
        return true;
    }

    BasicVertexSet& operator|=(const BasicVertexSet& o) noexcept {
        for (std::size_t w = 0; w < Words; ++w) bits_[w] |= o.bits_[w];
        return *this;
    }
    BasicVertexSet& operator&=(const BasicVertexSet& o) noexcept {
        for (std::size_t w = 0; w < Words; ++w) bits_[w] &= o.bits_[w];
        return *this;
    }
    BasicVertexSet& operator-=(const BasicVertexSet& o) noexcept {
        for (std::size_t w = 0; w < Words; ++w) bits_[w] &= ~o.bits_[w];
        return *this;
    }
    friend BasicVertexSet operator|(BasicVertexSet a, const BasicVertexSet& b) noexcept { return a |= b; }
    friend BasicVertexSet operator&(BasicVertexSet a, const BasicVertexSet& b) noexcept { return a &= b; }
    friend BasicVertexSet operator-(BasicVertexSet a, const BasicVertexSet& b) noexcept { return a -= b; }

    /// Members in increasing order.
    std::vector<int> members() const {
        std::vector<int> out;
        out.reserve(size());
        for (std::size_t w = 0; w < Words; ++w) {
            std::uint64_t x = bits_[w];
            while (x) {
                out.push_back(static_cast<int>(w * 64 + static_cast<std::size_t>(std::countr_zero(x))));
                x &= x - 1;
            }
        }
        return out;
    }

    /// Members as 1-based labels.
    std::vector<int> labels() const {
        auto m = members();
        for (int& v : m) ++v;
        return m;
    }

    /// Smallest member, or -1 when empty.
    int min() const noexcept {
        for (std::size_t w = 0; w < Words; ++w)
            if (bits_[w]) return static_cast<int>(w * 64 + static_cast<std::size_t>(std::countr_zero(bits_[w])));
        return -1;
    }

    const std::array<std::uint64_t, Words>& words() const noexcept { return bits_; }

    friend bool operator==(const BasicVertexSet&, const BasicVertexSet&) = default;
    friend auto operator<=>(const BasicVertexSet& a, const BasicVertexSet& b) noexcept {
        // lexicographic on the sorted member list is what callers expect for ordering
        return a.members() <=> b.members();
    }

private:
    static void check(int v) {
        if (v < 0 || static_cast<std::size_t>(v) >= capacity)
            throw std::out_of_range("vertex index " + std::to_string(v) + " outside vertex-set capacity " +
                                    std::to_string(capacity));
    }

    std::array<std::uint64_t, Words> bits_{};
};

/// Default key width: graphs up to 128 vertices.
using VertexSet = BasicVertexSet<2>;

}  // namespace permdet

template <std::size_t Words>
struct std::hash<permdet::BasicVertexSet<Words>> {
    std::size_t operator()(const permdet::BasicVertexSet<Words>& s) const noexcept {
        std::uint64_t h = 0x9e3779b97f4a7c15ULL;
        for (auto w : s.words()) {
            h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        }
        return static_cast<std::size_t>(h);
    }
};
