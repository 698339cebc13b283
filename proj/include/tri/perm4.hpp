#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace tri {

/// A permutation of the vertex labels {0,1,2,3} of a tetrahedron.
///
/// Values are ordered lexicographically on their image tuples, which gives
/// the 24 permutations indices 0..23 (identity is 0).
class Perm4 {
public:
    constexpr Perm4() noexcept : img_{0, 1, 2, 3} {}

    /// Builds the permutation i -> images[i]. Returns nullopt unless the
    /// images form a permutation of {0,1,2,3}.
    static constexpr std::optional<Perm4> from_images(int a, int b, int c, int d) noexcept {
        const int v[4] = {a, b, c, d};
        unsigned seen = 0;
        for (int x : v) {
            if (x < 0 || x > 3 || (seen & (1u << x))) return std::nullopt;
            seen |= 1u << x;
        }
        Perm4 p;
        for (int i = 0; i < 4; ++i) p.img_[i] = static_cast<std::uint8_t>(v[i]);
        return p;
    }

    /// Parses four digits such as "1302".
    static std::optional<Perm4> parse(std::string_view s) noexcept {
        if (s.size() != 4) return std::nullopt;
        for (char c : s)
            if (c < '0' || c > '9') return std::nullopt;
        return from_images(s[0] - '0', s[1] - '0', s[2] - '0', s[3] - '0');
    }

    /// The transposition swapping a and b.
    static constexpr Perm4 swap(int a, int b) noexcept {
        Perm4 p;
        p.img_[a] = static_cast<std::uint8_t>(b);
        p.img_[b] = static_cast<std::uint8_t>(a);
        return p;
    }

    static constexpr Perm4 from_index(int idx) noexcept {
        std::array<int, 4> pool{0, 1, 2, 3};
        int avail = 4;
        Perm4 p;
        int fact = 6;
        for (int pos = 0; pos < 4; ++pos) {
            const int k = idx / fact;
            idx %= fact;
            p.img_[pos] = static_cast<std::uint8_t>(pool[k]);
            for (int j = k; j + 1 < avail; ++j) pool[j] = pool[j + 1];
            --avail;
            if (pos < 3) fact /= (3 - pos);
        }
        return p;
    }

    constexpr int operator[](int i) const noexcept { return img_[i]; }

    /// (p * q)(i) = p(q(i)).
    constexpr Perm4 operator*(const Perm4& q) const noexcept {
        Perm4 r;
        for (int i = 0; i < 4; ++i) r.img_[i] = img_[q.img_[i]];
        return r;
    }

    constexpr Perm4 inverse() const noexcept {
        Perm4 r;
        for (int i = 0; i < 4; ++i) r.img_[img_[i]] = static_cast<std::uint8_t>(i);
        return r;
    }

    /// +1 for even permutations, -1 for odd.
    constexpr int sign() const noexcept {
        int inv = 0;
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j)
                if (img_[i] > img_[j]) ++inv;
        return (inv % 2 == 0) ? 1 : -1;
    }

    constexpr int index() const noexcept {
        int idx = 0;
        int fact = 6;
        for (int pos = 0; pos < 3; ++pos) {
            int smaller = 0;
            for (int j = pos + 1; j < 4; ++j)
                if (img_[j] < img_[pos]) ++smaller;
            idx += smaller * fact;
            fact /= (3 - pos);
        }
        return idx;
    }

    constexpr bool is_identity() const noexcept {
        return img_[0] == 0 && img_[1] == 1 && img_[2] == 2 && img_[3] == 3;
    }

    std::string str() const {
        std::string s(4, '0');
        for (int i = 0; i < 4; ++i) s[i] = static_cast<char>('0' + img_[i]);
        return s;
    }

    constexpr auto operator<=>(const Perm4&) const noexcept = default;

private:
    std::array<std::uint8_t, 4> img_;
};

/// All 24 permutations in index order.
inline constexpr std::array<Perm4, 24> all_perm4 = [] {
    std::array<Perm4, 24> out{};
    for (int i = 0; i < 24; ++i) out[i] = Perm4::from_index(i);
    return out;
}();

}  // namespace tri
