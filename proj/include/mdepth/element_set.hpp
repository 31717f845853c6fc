#pragma once

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <string>

#include "mdepth/common.hpp"

namespace mdepth {

// Subset of a fixed ground set {0, ..., universe-1}, packed into one 64-bit
// word.  Every operation that combines two sets requires them to share the
// universe; complements are taken relative to it.
class ElementSet {
  public:
    ElementSet() = default;

    explicit ElementSet(int universe) : universe_(universe) {
        if (universe < 0 || universe > 64)
            throw input_error("element set universe must be in [0, 64], got " +
                              std::to_string(universe));
    }

    static ElementSet of(int universe, std::initializer_list<int> elements) {
        ElementSet s(universe);
        for (int e : elements) s.insert(e);
        return s;
    }

    static ElementSet from_mask(int universe, std::uint64_t mask) {
        ElementSet s(universe);
        if (universe < 64 && (mask >> universe) != 0)
            throw input_error("bit mask exceeds universe of size " + std::to_string(universe));
        s.bits_ = mask;
        return s;
    }

    static ElementSet full(int universe) {
        ElementSet s(universe);
        s.bits_ = universe == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << universe) - 1;
        return s;
    }

    int universe() const { return universe_; }
    std::uint64_t mask() const { return bits_; }
    int count() const { return std::popcount(bits_); }
    bool empty() const { return bits_ == 0; }

    bool contains(int e) const {
        check_index(e);
        return (bits_ >> e) & 1;
    }

    void insert(int e) {
        check_index(e);
        bits_ |= std::uint64_t{1} << e;
    }

    void erase(int e) {
        check_index(e);
        bits_ &= ~(std::uint64_t{1} << e);
    }

    ElementSet complement() const {
        ElementSet s = full(universe_);
        s.bits_ &= ~bits_;
        return s;
    }

    bool subset_of(const ElementSet& other) const {
        check_universe(other);
        return (bits_ & ~other.bits_) == 0;
    }

    ElementSet operator|(const ElementSet& o) const { return combine(o, bits_ | o.bits_); }
    ElementSet operator&(const ElementSet& o) const { return combine(o, bits_ & o.bits_); }
    ElementSet operator-(const ElementSet& o) const { return combine(o, bits_ & ~o.bits_); }
    ElementSet operator^(const ElementSet& o) const { return combine(o, bits_ ^ o.bits_); }

    bool operator==(const ElementSet& o) const = default;

    // Orders by (size, lexicographic bit order): smaller sets first, then the
    // set containing the smallest distinguishing element first.
    static bool size_lex_less(const ElementSet& a, const ElementSet& b) {
        if (a.count() != b.count()) return a.count() < b.count();
        std::uint64_t diff = a.bits_ ^ b.bits_;
        if (diff == 0) return false;
        int low = std::countr_zero(diff);
        return (a.bits_ >> low) & 1;
    }

    // Iterates set bits in increasing order.
    class iterator {
      public:
        explicit iterator(std::uint64_t rest) : rest_(rest) {}
        int operator*() const { return std::countr_zero(rest_); }
        iterator& operator++() {
            rest_ &= rest_ - 1;
            return *this;
        }
        bool operator!=(const iterator& o) const { return rest_ != o.rest_; }

      private:
        std::uint64_t rest_;
    };

    iterator begin() const { return iterator(bits_); }
    iterator end() const { return iterator(0); }

    std::string to_string() const {
        std::string out = "{";
        bool first = true;
        for (int e : *this) {
            if (!first) out += ",";
            out += std::to_string(e);
            first = false;
        }
        return out + "}";
    }

  private:
    void check_index(int e) const {
        if (e < 0 || e >= universe_)
            throw input_error("element " + std::to_string(e) + " out of range for ground set of size " +
                              std::to_string(universe_));
    }

    void check_universe(const ElementSet& o) const {
        if (universe_ != o.universe_)
            throw input_error("element sets over different ground sets (" + std::to_string(universe_) +
                              " vs " + std::to_string(o.universe_) + ")");
    }

    ElementSet combine(const ElementSet& o, std::uint64_t bits) const {
        check_universe(o);
        ElementSet s(universe_);
        s.bits_ = bits;
        return s;
    }

    std::uint64_t bits_ = 0;
    int universe_ = 0;
};

}  // namespace mdepth
