#pragma once

#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "gdiv/abgroup.hpp"
#include "gdiv/errors.hpp"

namespace gdiv {

// G = Z/r_1 x ... x Z/r_n given by its cyclic factors.
struct FiniteAbGroupSpec {
    std::vector<std::int64_t> orders;

    FiniteAbGroupSpec() = default;
    explicit FiniteAbGroupSpec(std::vector<std::int64_t> o) : orders(std::move(o)) {
        for (auto r : orders)
            if (r < 1) throw InputError("cyclic factor orders must be >= 1");
    }

    std::size_t rank() const { return orders.size(); }
    std::int64_t size() const {
        std::int64_t s = 1;
        for (auto r : orders) s *= r;
        return s;
    }

    std::vector<std::int64_t> element(std::int64_t index) const {
        std::vector<std::int64_t> e(orders.size());
        for (std::size_t i = 0; i < orders.size(); ++i) {
            e[i] = index % orders[i];
            index /= orders[i];
        }
        return e;
    }
    std::int64_t index_of(const std::vector<std::int64_t>& e) const {
        std::int64_t idx = 0, mul = 1;
        for (std::size_t i = 0; i < orders.size(); ++i) {
            idx += mod_floor_local(e[i], orders[i]) * mul;
            mul *= orders[i];
        }
        return idx;
    }
    std::vector<std::int64_t> add(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b) const {
        std::vector<std::int64_t> c(orders.size());
        for (std::size_t i = 0; i < orders.size(); ++i) c[i] = mod_floor_local(a[i] + b[i], orders[i]);
        return c;
    }
    std::int64_t element_order(const std::vector<std::int64_t>& e) const {
        std::int64_t o = 1;
        for (std::size_t i = 0; i < orders.size(); ++i) {
            std::int64_t x = mod_floor_local(e[i], orders[i]);
            std::int64_t oi = orders[i] / std::gcd(x, orders[i]);
            o = o / std::gcd(o, oi) * oi;
        }
        return o;
    }

    // Subgroup generated by gens, as a membership mask over element indices.
    std::vector<char> closure(const std::vector<std::vector<std::int64_t>>& gens) const {
        std::vector<char> in(static_cast<std::size_t>(size()), 0);
        std::vector<std::int64_t> stack{0};
        in[0] = 1;
        while (!stack.empty()) {
            auto cur = element(stack.back());
            stack.pop_back();
            for (auto& g : gens) {
                std::int64_t nx = index_of(add(cur, g));
                if (!in[static_cast<std::size_t>(nx)]) {
                    in[static_cast<std::size_t>(nx)] = 1;
                    stack.push_back(nx);
                }
            }
        }
        return in;
    }

    // Every subgroup, as membership masks, in a deterministic order.
    std::vector<std::vector<char>> all_subgroups() const {
        std::set<std::vector<char>> seen;
        std::vector<std::vector<char>> out, frontier{closure({})};
        seen.insert(frontier.front());
        while (!frontier.empty()) {
            std::vector<std::vector<char>> next;
            for (auto& s : frontier) {
                out.push_back(s);
                for (std::int64_t g = 0; g < size(); ++g) {
                    if (s[static_cast<std::size_t>(g)]) continue;
                    std::vector<std::vector<std::int64_t>> gens = subgroup_elements(s);
                    gens.push_back(element(g));
                    auto t = closure(gens);
                    if (seen.insert(t).second) next.push_back(t);
                }
            }
            frontier = std::move(next);
        }
        return out;
    }

    std::vector<std::vector<std::int64_t>> subgroup_elements(const std::vector<char>& mask) const {
        std::vector<std::vector<std::int64_t>> els;
        for (std::int64_t g = 0; g < size(); ++g)
            if (mask[static_cast<std::size_t>(g)]) els.push_back(element(g));
        return els;
    }

private:
    static std::int64_t mod_floor_local(std::int64_t a, std::int64_t m) {
        std::int64_t r = a % m;
        return r < 0 ? r + m : r;
    }
};

// Every finite abelian group of order <= max_order, one per isomorphism type,
// presented by invariant factors d_1 | d_2 | ...
inline std::vector<FiniteAbGroupSpec> abelian_groups_up_to(std::int64_t max_order) {
    std::vector<FiniteAbGroupSpec> out;
    std::vector<std::int64_t> cur;
    auto rec = [&](auto&& self, std::int64_t prod) -> void {
        out.emplace_back(cur);
        for (std::int64_t d = 2; prod * d <= max_order; ++d) {
            if (!cur.empty() && d % cur.back() != 0) continue;
            cur.push_back(d);
            self(self, prod * d);
            cur.pop_back();
        }
    };
    rec(rec, 1);
    return out;
}

// Z[G]-module: Z^k modulo the row lattice of `relations`; generator i of G acts on
// row vectors by x -> x * actions[i].
class GModule {
public:
    GModule(FiniteAbGroupSpec group, std::size_t generators, IntMatrix relations, std::vector<IntMatrix> actions)
        : group_(std::move(group)), k_(generators), rel_(std::move(relations)), act_(std::move(actions)) {
        if (rel_.rows() == 0) rel_ = IntMatrix(0, k_);
        if (rel_.cols() != k_) throw InvalidStructureError("relation rows must have one entry per module generator");
        if (act_.size() != group_.rank())
            throw InvalidStructureError("need exactly one action matrix per group generator");
        for (auto& a : act_)
            if (a.rows() != k_ || a.cols() != k_) throw InvalidStructureError("action matrices must be k x k");
        validate();
    }

    const FiniteAbGroupSpec& group() const { return group_; }
    std::size_t generators() const { return k_; }
    const IntMatrix& relations() const { return rel_; }
    const std::vector<IntMatrix>& actions() const { return act_; }

    bool is_relation(const std::vector<BigInt>& x) const { return RowLattice(rel_, k_).contains(x); }

    // Matrix of the group element with exponents e (product of generator powers).
    IntMatrix action_of(const std::vector<std::int64_t>& e) const {
        IntMatrix m = IntMatrix::identity(k_);
        for (std::size_t i = 0; i < e.size(); ++i) {
            std::int64_t x = e[i] % group_.orders[i];
            if (x < 0) x += group_.orders[i];
            for (std::int64_t t = 0; t < x; ++t) m = m * act_[i];
        }
        return m;
    }

private:
    void validate() const {
        RowLattice lat(rel_, k_);
        auto check_rows = [&](const IntMatrix& m, const std::string& what) {
            for (std::size_t j = 0; j < m.rows(); ++j)
                if (!lat.contains(m.row(j))) throw InvalidStructureError(what);
        };
        IntMatrix id = IntMatrix::identity(k_);
        for (std::size_t i = 0; i < act_.size(); ++i) {
            check_rows(rel_ * act_[i], "action " + std::to_string(i) + " does not preserve the relation lattice");
            IntMatrix pw = id;
            for (std::int64_t t = 0; t < group_.orders[i]; ++t) pw = pw * act_[i];
            check_rows(pw - id, "action " + std::to_string(i) + " raised to its order is not the identity");
            for (std::size_t j = i + 1; j < act_.size(); ++j)
                check_rows(act_[i] * act_[j] - act_[j] * act_[i],
                           "actions " + std::to_string(i) + " and " + std::to_string(j) + " do not commute");
        }
    }

    FiniteAbGroupSpec group_;
    std::size_t k_;
    IntMatrix rel_;
    std::vector<IntMatrix> act_;
};

// Sum over g in G of the action matrices.
inline IntMatrix norm_endomorphism(const GModule& m) {
    const auto& G = m.group();
    const std::size_t k = m.generators();
    // powers[i][e] = A_i^e
    std::vector<std::vector<IntMatrix>> powers(G.rank());
    for (std::size_t i = 0; i < G.rank(); ++i) {
        powers[i].push_back(IntMatrix::identity(k));
        for (std::int64_t e = 1; e < G.orders[i]; ++e) powers[i].push_back(powers[i].back() * m.actions()[i]);
    }
    IntMatrix n(k, k);
    for (std::int64_t idx = 0; idx < G.size(); ++idx) {
        auto e = G.element(idx);
        IntMatrix a = IntMatrix::identity(k);
        for (std::size_t i = 0; i < G.rank(); ++i)
            if (e[i]) a = a * powers[i][static_cast<std::size_t>(e[i])];
        n = n + a;
    }
    return n;
}

struct TateComplex {
    IntMatrix kernel_gens;        // lattice of x with N_G(x) in the relation lattice
    IntMatrix augmentation_gens;  // relations together with the rows x - g x
    FiniteAbelianGroup group;     // their quotient
};

inline TateComplex tate_complex(const GModule& m) {
    const std::size_t k = m.generators();
    IntMatrix n = norm_endomorphism(m);
    IntMatrix stacked = vstack(n, m.relations());
    IntMatrix lk = left_kernel(stacked);
    IntMatrix ker(0, k);
    for (std::size_t i = 0; i < lk.rows(); ++i) {
        auto r = lk.row(i);
        r.resize(k);
        ker.append_row(r);
    }
    IntMatrix aug = m.relations();
    IntMatrix id = IntMatrix::identity(k);
    for (auto& a : m.actions()) aug = vstack(aug, id - a);
    FiniteAbelianGroup h = subquotient(k, ker, aug);
    return {ker, aug, h};
}

inline FiniteAbelianGroup tate_h_minus1(const GModule& m) { return tate_complex(m).group; }

struct WedgeGroup {
    FiniteAbGroupSpec source;
    std::vector<std::pair<std::size_t, std::size_t>> labels;  // sigma_i ^ sigma_j, i < j
    std::vector<std::int64_t> label_orders;                   // gcd(r_i, r_j)
    FiniteAbelianGroup group;
};

inline WedgeGroup wedge_square(const FiniteAbGroupSpec& g) {
    WedgeGroup w;
    w.source = g;
    std::vector<BigInt> ords;
    for (std::size_t i = 0; i < g.rank(); ++i)
        for (std::size_t j = i + 1; j < g.rank(); ++j) {
            w.labels.emplace_back(i, j);
            w.label_orders.push_back(std::gcd(g.orders[i], g.orders[j]));
            ords.emplace_back(w.label_orders.back());
        }
    w.group = FiniteAbelianGroup::from_orders(ords);
    return w;
}

// u[{i,j}] for i < j, each a vector in Z^k.
using WedgeData = std::map<std::pair<std::size_t, std::size_t>, std::vector<BigInt>>;

struct WedgeMapResult {
    WedgeGroup domain;
    FiniteAbelianGroup h_minus1;
    FiniteAbelianGroup image;
    FiniteAbelianGroup cokernel;
    std::vector<BigInt> class_orders;  // order of the class of each u_ij, in label order
};

inline BigInt class_order(std::size_t k, const IntMatrix& aug, const std::vector<BigInt>& x) {
    IntMatrix with = aug;
    with.append_row(x);
    auto o = subquotient(k, with, aug).order();
    return o ? *o : BigInt(0);
}

inline WedgeMapResult wedge_map(const GModule& m, const WedgeData& u) {
    const std::size_t k = m.generators();
    WedgeMapResult r;
    r.domain = wedge_square(m.group());
    TateComplex t = tate_complex(m);
    r.h_minus1 = t.group;
    RowLattice ker(t.kernel_gens, k);
    IntMatrix img = t.augmentation_gens;
    for (auto& [ij, vec] : u) {
        if (ij.first >= ij.second || ij.second >= m.group().rank())
            throw InputError("u entries must be indexed by pairs i < j of group generators");
        if (vec.size() != k) throw InputError("u entry has wrong length");
    }
    for (auto& lab : r.domain.labels) {
        auto it = u.find(lab);
        std::vector<BigInt> vec = it == u.end() ? std::vector<BigInt>(k, 0) : it->second;
        if (!ker.contains(vec))
            throw NotInKernelError("u_" + std::to_string(lab.first + 1) + std::to_string(lab.second + 1) +
                                   " is not in the kernel of the norm");
        r.class_orders.push_back(class_order(k, t.augmentation_gens, vec));
        img.append_row(vec);
    }
    r.image = subquotient(k, img, t.augmentation_gens);
    r.cokernel = subquotient(k, t.kernel_gens, img);
    return r;
}

// Z[G/H] with the coset permutation action.
inline GModule permutation_module(const FiniteAbGroupSpec& g, const std::vector<std::vector<std::int64_t>>& h_gens) {
    for (auto& h : h_gens)
        if (h.size() != g.rank()) throw InputError("subgroup generator has wrong length");
    auto mask = g.closure(h_gens);
    auto hs = g.subgroup_elements(mask);
    std::vector<std::int64_t> coset_of(static_cast<std::size_t>(g.size()), -1);
    std::int64_t ncos = 0;
    for (std::int64_t x = 0; x < g.size(); ++x) {
        if (coset_of[static_cast<std::size_t>(x)] >= 0) continue;
        auto ex = g.element(x);
        for (auto& h : hs) coset_of[static_cast<std::size_t>(g.index_of(g.add(ex, h)))] = ncos;
        ++ncos;
    }
    std::vector<std::int64_t> rep(static_cast<std::size_t>(ncos), -1);
    for (std::int64_t x = 0; x < g.size(); ++x)
        if (rep[static_cast<std::size_t>(coset_of[static_cast<std::size_t>(x)])] < 0)
            rep[static_cast<std::size_t>(coset_of[static_cast<std::size_t>(x)])] = x;
    std::vector<IntMatrix> acts;
    for (std::size_t i = 0; i < g.rank(); ++i) {
        IntMatrix a(static_cast<std::size_t>(ncos), static_cast<std::size_t>(ncos));
        std::vector<std::int64_t> ei(g.rank(), 0);
        ei[i] = 1;
        for (std::int64_t c = 0; c < ncos; ++c) {
            auto y = g.add(g.element(rep[static_cast<std::size_t>(c)]), ei);
            a(static_cast<std::size_t>(c), static_cast<std::size_t>(coset_of[static_cast<std::size_t>(g.index_of(y))])) = 1;
        }
        acts.push_back(a);
    }
    return GModule(g, static_cast<std::size_t>(ncos), IntMatrix(0, static_cast<std::size_t>(ncos)), acts);
}

inline GModule direct_sum(const GModule& a, const GModule& b) {
    if (a.group().orders != b.group().orders) throw InputError("direct sum needs the same group");
    const std::size_t ka = a.generators(), kb = b.generators(), k = ka + kb;
    IntMatrix rel(0, k);
    for (std::size_t i = 0; i < a.relations().rows(); ++i) {
        auto r = a.relations().row(i);
        r.resize(k);
        rel.append_row(r);
    }
    for (std::size_t i = 0; i < b.relations().rows(); ++i) {
        std::vector<BigInt> r(k);
        auto s = b.relations().row(i);
        std::copy(s.begin(), s.end(), r.begin() + static_cast<std::ptrdiff_t>(ka));
        rel.append_row(r);
    }
    std::vector<IntMatrix> acts;
    for (std::size_t g = 0; g < a.group().rank(); ++g) {
        IntMatrix m(k, k);
        for (std::size_t i = 0; i < ka; ++i)
            for (std::size_t j = 0; j < ka; ++j) m(i, j) = a.actions()[g](i, j);
        for (std::size_t i = 0; i < kb; ++i)
            for (std::size_t j = 0; j < kb; ++j) m(ka + i, ka + j) = b.actions()[g](i, j);
        acts.push_back(m);
    }
    return GModule(a.group(), k, rel, acts);
}

// Cyclic module Z/(q^m - 1) with a generator of Z/m acting by multiplication by q:
// the unit group of GF(q^m) in additive (discrete-log) notation.
inline GModule finite_field_unit_module(std::int64_t q, std::int64_t m) {
    BigInt order = 1;
    for (std::int64_t i = 0; i < m; ++i) order *= q;
    order -= 1;
    IntMatrix rel(1, 1);
    rel(0, 0) = order;
    IntMatrix act(1, 1);
    act(0, 0) = q;
    return GModule(FiniteAbGroupSpec({m}), 1, rel, {act});
}

// The module restricted to the subgroup generated by h1, h2 (assumed to be a direct product of their cyclic groups).
inline GModule restrict_module(const GModule& m, const std::vector<std::vector<std::int64_t>>& hgens) {
    std::vector<std::int64_t> ords;
    std::vector<IntMatrix> acts;
    for (auto& h : hgens) {
        ords.push_back(m.group().element_order(h));
        acts.push_back(m.action_of(h));
    }
    return GModule(FiniteAbGroupSpec(ords), m.generators(), m.relations(), acts);
}

}  // namespace gdiv
