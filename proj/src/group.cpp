#include "sumset/group.hpp"

#include <algorithm>
#include <numeric>

namespace sumset {

GroupPtr make_group(const std::vector<std::int64_t>& orders, std::int64_t cap) {
    if (orders.empty()) throw InvalidSpecError("group needs at least one cyclic factor");
    std::int64_t size = 1;
    for (std::int64_t n : orders) {
        if (n < 1) throw InvalidSpecError("cyclic factor orders must be >= 1");
        if (n > cap || size > cap / n)
            throw SizeLimitError("group order exceeds cap " + std::to_string(cap));
        size *= n;
    }
    auto g = std::make_shared<Group>();
    g->factors_ = orders;
    g->size_ = size;
    g->strides_.resize(orders.size());
    std::int64_t stride = 1;
    for (std::size_t i = orders.size(); i-- > 0;) {
        g->strides_[i] = stride;
        stride *= orders[i];
    }
    return g;
}

Elem Group::add_slow(Elem a, Elem b) const {
    Elem r = 0;
    for (std::size_t i = factors_.size(); i-- > 0;) {
        std::int64_t n = factors_[i];
        std::int64_t s = a % n + b % n;
        if (s >= n) s -= n;
        a /= n;
        b /= n;
        r += s * strides_[i];
    }
    return r;
}

Elem Group::neg_slow(Elem a) const {
    Elem r = 0;
    for (std::size_t i = factors_.size(); i-- > 0;) {
        std::int64_t n = factors_[i];
        std::int64_t x = a % n;
        a /= n;
        r += (x == 0 ? 0 : n - x) * strides_[i];
    }
    return r;
}

void Group::decompose(Elem a, std::vector<std::int64_t>& coords) const {
    coords.resize(factors_.size());
    for (std::size_t i = factors_.size(); i-- > 0;) {
        coords[i] = a % factors_[i];
        a /= factors_[i];
    }
}

Elem Group::compose(const std::vector<std::int64_t>& coords) const {
    if (coords.size() != factors_.size())
        throw InvalidSpecError("coordinate tuple arity does not match the group");
    Elem r = 0;
    for (std::size_t i = 0; i < coords.size(); ++i) {
        std::int64_t c = coords[i] % factors_[i];
        if (c < 0) c += factors_[i];
        r += c * strides_[i];
    }
    return r;
}

std::int64_t Group::order_of(Elem a) const {
    std::int64_t ord = 1;
    Elem x = a;
    while (x != 0) {
        x = add(x, a);
        ++ord;
    }
    return ord;
}

std::int64_t Group::exponent() const {
    std::int64_t e = 1;
    for (std::int64_t n : factors_) e = std::lcm(e, n);
    return e;
}

std::string Group::to_string() const {
    std::string s;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        if (i) s += 'x';
        s += std::to_string(factors_[i]);
    }
    return s;
}

namespace {

// Multiset partitions of the exponent e into cyclic p-power factors.
void prime_power_partitions(std::int64_t p, int e, std::vector<std::int64_t>& current,
                            int remaining, std::int64_t max_part,
                            std::vector<std::vector<std::int64_t>>& out) {
    if (remaining == 0) {
        out.push_back(current);
        return;
    }
    for (int part = 1; part <= remaining; ++part) {
        std::int64_t q = 1;
        for (int i = 0; i < part; ++i) q *= p;
        if (q > max_part) break;
        current.push_back(q);
        prime_power_partitions(p, e, current, remaining - part, q, out);
        current.pop_back();
    }
    (void)e;
}

} // namespace

std::vector<std::vector<std::int64_t>> abelian_group_orders_upto(std::int64_t max_order) {
    std::vector<std::vector<std::int64_t>> result;
    for (std::int64_t n = 1; n <= max_order; ++n) {
        // factor n
        std::vector<std::pair<std::int64_t, int>> pf;
        std::int64_t m = n;
        for (std::int64_t p = 2; p * p <= m; ++p) {
            if (m % p) continue;
            int e = 0;
            while (m % p == 0) {
                m /= p;
                ++e;
            }
            pf.emplace_back(p, e);
        }
        if (m > 1) pf.emplace_back(m, 1);

        std::vector<std::vector<std::int64_t>> combos{{}};
        for (auto [p, e] : pf) {
            std::vector<std::vector<std::int64_t>> parts;
            std::vector<std::int64_t> cur;
            prime_power_partitions(p, e, cur, e, std::int64_t{1} << 62, parts);
            std::vector<std::vector<std::int64_t>> next;
            for (const auto& base : combos)
                for (const auto& part : parts) {
                    auto merged = base;
                    merged.insert(merged.end(), part.begin(), part.end());
                    next.push_back(std::move(merged));
                }
            combos = std::move(next);
        }
        for (auto& c : combos) {
            if (c.empty()) c.push_back(1); // the trivial group
            std::sort(c.begin(), c.end());
            result.push_back(std::move(c));
        }
    }
    return result;
}

} // namespace sumset
