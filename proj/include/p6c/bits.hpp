#pragma once

#include <cassert>
#include <cstdint>
#include <vector>

namespace p6c {

// Fixed-universe dynamic bitset used for vertex sets and adjacency rows.
class Bits {
public:
    Bits() : n_(0) {}
    explicit Bits(int n) : n_(n), w_((n + 63) / 64, 0) {}

    int universe() const { return n_; }

    bool test(int i) const { return (w_[i >> 6] >> (i & 63)) & 1; }
    void set(int i) { w_[i >> 6] |= uint64_t(1) << (i & 63); }
    void reset(int i) { w_[i >> 6] &= ~(uint64_t(1) << (i & 63)); }
    void assign(int i, bool v) { v ? set(i) : reset(i); }

    void clear() { for (auto& w : w_) w = 0; }

    int count() const {
        int c = 0;
        for (auto w : w_) c += __builtin_popcountll(w);
        return c;
    }
    bool empty() const {
        for (auto w : w_) if (w) return false;
        return true;
    }
    bool any() const { return !empty(); }

    // Smallest member, or -1.
    int first() const {
        for (size_t k = 0; k < w_.size(); ++k)
            if (w_[k]) return int(k * 64 + __builtin_ctzll(w_[k]));
        return -1;
    }
    // Smallest member > i, or -1.
    int next(int i) const {
        ++i;
        if (i >= n_) return -1;
        size_t k = size_t(i) >> 6;
        uint64_t w = w_[k] & (~uint64_t(0) << (i & 63));
        while (true) {
            if (w) return int(k * 64 + __builtin_ctzll(w));
            if (++k >= w_.size()) return -1;
            w = w_[k];
        }
    }

    Bits& operator&=(const Bits& o) { bin(o, [](uint64_t a, uint64_t b) { return a & b; }); return *this; }
    Bits& operator|=(const Bits& o) { bin(o, [](uint64_t a, uint64_t b) { return a | b; }); return *this; }
    Bits& operator-=(const Bits& o) { bin(o, [](uint64_t a, uint64_t b) { return a & ~b; }); return *this; }

    friend Bits operator&(Bits a, const Bits& b) { a &= b; return a; }
    friend Bits operator|(Bits a, const Bits& b) { a |= b; return a; }
    friend Bits operator-(Bits a, const Bits& b) { a -= b; return a; }

    bool operator==(const Bits& o) const { return w_ == o.w_; }
    bool operator!=(const Bits& o) const { return w_ != o.w_; }

    bool intersects(const Bits& o) const {
        for (size_t k = 0; k < w_.size(); ++k)
            if (w_[k] & o.w_[k]) return true;
        return false;
    }
    bool subset_of(const Bits& o) const {
        for (size_t k = 0; k < w_.size(); ++k)
            if (w_[k] & ~o.w_[k]) return false;
        return true;
    }

    std::vector<int> to_vector() const {
        std::vector<int> v;
        for (int i = first(); i >= 0; i = next(i)) v.push_back(i);
        return v;
    }
    static Bits of(int n, const std::vector<int>& xs) {
        Bits b(n);
        for (int x : xs) { assert(0 <= x && x < n); b.set(x); }
        return b;
    }

    template <class F>
    void for_each(F f) const {
        for (int i = first(); i >= 0; i = next(i)) f(i);
    }

    // Lexicographic order on members; used for deterministic tie-breaking.
    bool operator<(const Bits& o) const { return w_ < o.w_; }

private:
    template <class Op>
    void bin(const Bits& o, Op op) {
        assert(n_ == o.n_);
        for (size_t k = 0; k < w_.size(); ++k) w_[k] = op(w_[k], o.w_[k]);
    }

    int n_;
    std::vector<uint64_t> w_;
};

} // namespace p6c
