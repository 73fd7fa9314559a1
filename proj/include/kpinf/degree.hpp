#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

namespace kpinf {

/// An element of Z^k. Path degrees live in N^k; differences of degrees (the
/// grading of the algebra) may have negative coordinates.
class Degree {
public:
    Degree() = default;
    explicit Degree(std::size_t rank) : coords_(rank, 0) {}
    Degree(std::initializer_list<int> coords) : coords_(coords) {}
    explicit Degree(std::vector<int> coords) : coords_(std::move(coords)) {}

    static Degree unit(std::size_t rank, std::size_t color) {
        Degree d(rank);
        d.coords_[color] = 1;
        return d;
    }
    static Degree uniform(std::size_t rank, int value) {
        return Degree(std::vector<int>(rank, value));
    }

    std::size_t rank() const noexcept { return coords_.size(); }
    int operator[](std::size_t i) const { return coords_[i]; }
    int& operator[](std::size_t i) { return coords_[i]; }
    const std::vector<int>& coords() const noexcept { return coords_; }

    int total() const {
        int t = 0;
        for (int c : coords_) t += c;
        return t;
    }
    bool is_zero() const {
        return std::all_of(coords_.begin(), coords_.end(), [](int c) { return c == 0; });
    }
    bool is_nonnegative() const {
        return std::all_of(coords_.begin(), coords_.end(), [](int c) { return c >= 0; });
    }

    /// Coordinatewise partial order.
    bool leq(const Degree& other) const {
        for (std::size_t i = 0; i < coords_.size(); ++i)
            if (coords_[i] > other.coords_[i]) return false;
        return true;
    }

    Degree& operator+=(const Degree& o) {
        for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += o.coords_[i];
        return *this;
    }
    Degree& operator-=(const Degree& o) {
        for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] -= o.coords_[i];
        return *this;
    }
    friend Degree operator+(Degree a, const Degree& b) { return a += b; }
    friend Degree operator-(Degree a, const Degree& b) { return a -= b; }

    /// Coordinatewise maximum (m v n).
    friend Degree join(const Degree& a, const Degree& b) {
        Degree r = a;
        for (std::size_t i = 0; i < r.coords_.size(); ++i)
            r.coords_[i] = std::max(a.coords_[i], b.coords_[i]);
        return r;
    }
    /// Coordinatewise minimum (m ^ n).
    friend Degree meet(const Degree& a, const Degree& b) {
        Degree r = a;
        for (std::size_t i = 0; i < r.coords_.size(); ++i)
            r.coords_[i] = std::min(a.coords_[i], b.coords_[i]);
        return r;
    }

    friend bool operator==(const Degree&, const Degree&) = default;
    friend auto operator<=>(const Degree&, const Degree&) = default;

    std::string to_string() const {
        std::string s = "(";
        for (std::size_t i = 0; i < coords_.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(coords_[i]);
        }
        return s + ")";
    }

private:
    std::vector<int> coords_;
};

/// All n with 0 <= n <= bound, in lexicographic order. `bound` must be nonnegative.
inline std::vector<Degree> degrees_below(const Degree& bound) {
    std::vector<Degree> out;
    Degree cur(bound.rank());
    for (;;) {
        out.push_back(cur);
        std::size_t i = bound.rank();
        for (;;) {
            if (i == 0) return out;
            --i;
            if (cur[i] < bound[i]) {
                ++cur[i];
                for (std::size_t j = i + 1; j < bound.rank(); ++j) cur[j] = 0;
                break;
            }
        }
    }
}

}  // namespace kpinf
