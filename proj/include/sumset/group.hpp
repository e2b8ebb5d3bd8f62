#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "sumset/errors.hpp"

namespace sumset {

/// Element of a finite abelian group, as a flat mixed-radix index.
using Elem = std::int64_t;

class Group;
using GroupPtr = std::shared_ptr<const Group>;

/// A finite abelian group presented as Z/n1 x ... x Z/nk.
/// Elements are flat indices: index(x) = sum_i x_i * prod_{j>i} n_j.
class Group {
public:
    static constexpr std::int64_t kDefaultCap = std::int64_t{1} << 24;

    std::int64_t size() const { return size_; }
    const std::vector<std::int64_t>& factors() const { return factors_; }
    std::size_t num_factors() const { return factors_.size(); }
    std::int64_t stride(std::size_t i) const { return strides_[i]; }

    Elem add(Elem a, Elem b) const {
        if (factors_.size() == 1) {
            Elem s = a + b;
            return s >= size_ ? s - size_ : s;
        }
        return add_slow(a, b);
    }

    Elem neg(Elem a) const {
        if (factors_.size() == 1) return a == 0 ? 0 : size_ - a;
        return neg_slow(a);
    }

    Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }

    void decompose(Elem a, std::vector<std::int64_t>& coords) const;
    Elem compose(const std::vector<std::int64_t>& coords) const;

    /// Additive order of a.
    std::int64_t order_of(Elem a) const;

    /// lcm of all element orders (equals the maximal element order).
    std::int64_t exponent() const;

    /// "n1xn2x...".
    std::string to_string() const;

    bool same_as(const Group& other) const { return factors_ == other.factors_; }

private:
    friend GroupPtr make_group(const std::vector<std::int64_t>&, std::int64_t);

    Elem add_slow(Elem a, Elem b) const;
    Elem neg_slow(Elem a) const;

    std::vector<std::int64_t> factors_;
    std::vector<std::int64_t> strides_;
    std::int64_t size_ = 0;
};

/// Validates the factor list and the order cap (default 2^24 elements).
GroupPtr make_group(const std::vector<std::int64_t>& orders,
                    std::int64_t cap = Group::kDefaultCap);

/// Primary decompositions (prime-power factor lists, ascending) of all
/// isomorphism types of abelian groups of order <= max_order.
std::vector<std::vector<std::int64_t>> abelian_group_orders_upto(std::int64_t max_order);

} // namespace sumset
