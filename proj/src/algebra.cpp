#include "emlab/algebra.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <utility>

namespace emlab {

// ---------------------------------------------------------------------------
// Prime fields
// ---------------------------------------------------------------------------

bool is_prime(int64_t n) {
    if (n < 2) return false;
    if (n < 4) return true;
    if (n % 2 == 0) return false;
    for (int64_t d = 3; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

PrimeField make_prime_field(int64_t p) {
    if (!is_prime(p)) throw NotPrimeError("p = " + std::to_string(p) + " is not prime");
    return PrimeField{p};
}

int64_t PrimeField::inv(int64_t a) const {
    a = reduce(a);
    if (a == 0) throw DomainError("inverse of 0 in F_" + std::to_string(p));
    int64_t r0 = p, r1 = a;
    int64_t s0 = 0, s1 = 1;
    while (r1 != 0) {
        int64_t q = r0 / r1;
        int64_t r2 = r0 - q * r1;
        int64_t s2 = s0 - q * s1;
        r0 = r1; r1 = r2;
        s0 = s1; s1 = s2;
    }
    // r0 = gcd(p, a) = 1 since p is prime and a != 0
    return reduce(s0);
}

int64_t PrimeField::pow(int64_t a, int64_t e) const {
    if (e < 0) throw DomainError("negative exponent");
    a = reduce(a);
    int64_t r = 1 % p;
    while (e > 0) {
        if (e & 1) r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}

// ---------------------------------------------------------------------------
// 2x2 matrices
// ---------------------------------------------------------------------------

Mat2 mat2_mul(const PrimeField& F, const Mat2& x, const Mat2& y) {
    return Mat2{
        F.add(F.mul(x.a, y.a), F.mul(x.b, y.c)),
        F.add(F.mul(x.a, y.b), F.mul(x.b, y.d)),
        F.add(F.mul(x.c, y.a), F.mul(x.d, y.c)),
        F.add(F.mul(x.c, y.b), F.mul(x.d, y.d)),
    };
}

Mat2 mat2_inv_det1(const PrimeField& F, const Mat2& x) {
    // det = 1, so the adjugate is the inverse.
    return Mat2{x.d, F.neg(x.b), F.neg(x.c), x.a};
}

Mat2 psl2_canonical(const PrimeField& F, const Mat2& x) {
    if (F.p == 2) return x;
    const int64_t half = (F.p - 1) / 2;
    const int64_t entries[4] = {x.a, x.b, x.c, x.d};
    for (int64_t e : entries) {
        if (e == 0) continue;
        if (e <= half) return x;
        return Mat2{F.neg(x.a), F.neg(x.b), F.neg(x.c), F.neg(x.d)};
    }
    throw Error("zero matrix has no projective representative");
}

// ---------------------------------------------------------------------------
// FiniteGroup
// ---------------------------------------------------------------------------

FiniteGroup::FiniteGroup(std::string descriptor,
                         std::vector<GroupElement> elements,
                         std::function<GroupElement(const GroupElement&, const GroupElement&)> op,
                         std::function<GroupElement(const GroupElement&)> inv,
                         GroupElement identity)
    : descriptor_(std::move(descriptor)),
      elements_(std::move(elements)),
      op_(std::move(op)),
      inv_(std::move(inv)),
      id_(std::move(identity)) {
    std::sort(elements_.begin(), elements_.end());
    for (int64_t i = 0; i < static_cast<int64_t>(elements_.size()); ++i) {
        auto [it, fresh] = index_.emplace(elements_[i], i);
        if (!fresh)
            throw Error("duplicate element " + format_element(elements_[i]) +
                        " in group " + descriptor_);
    }
    auto it = index_.find(id_);
    if (it == index_.end())
        throw Error("identity not among the elements of " + descriptor_);
    id_idx_ = it->second;
}

int64_t FiniteGroup::index_of(const GroupElement& g) const {
    auto it = index_.find(g);
    if (it == index_.end())
        throw Error("element " + format_element(g) + " is not in group " + descriptor_);
    return it->second;
}

std::string format_element(const GroupElement& g) {
    std::string s = "(";
    for (size_t i = 0; i < g.data.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(g.data[i]);
    }
    s += ")";
    return s;
}

// ---------------------------------------------------------------------------
// Factories
// ---------------------------------------------------------------------------

static void check_order_cap(int64_t order, const std::string& what) {
    if (order > kGroupOrderCap)
        throw TooLargeError(what + " has order " + std::to_string(order) +
                            " > cap " + std::to_string(kGroupOrderCap));
}

GroupPtr make_cyclic(int64_t n) {
    if (n < 1) throw Error("cyclic group needs n >= 1");
    check_order_cap(n, "cyclic:" + std::to_string(n));
    std::vector<GroupElement> elems;
    elems.reserve(n);
    for (int64_t k = 0; k < n; ++k) elems.push_back({{static_cast<int32_t>(k)}});
    auto op = [n](const GroupElement& a, const GroupElement& b) {
        return GroupElement{{static_cast<int32_t>((a.data[0] + b.data[0]) % n)}};
    };
    auto inv = [n](const GroupElement& a) {
        return GroupElement{{static_cast<int32_t>((n - a.data[0]) % n)}};
    };
    return std::make_shared<FiniteGroup>("cyclic:" + std::to_string(n), std::move(elems),
                                         op, inv, GroupElement{{0}});
}

GroupPtr make_units(int64_t p) {
    PrimeField F = make_prime_field(p);
    check_order_cap(p - 1, "units:" + std::to_string(p));
    std::vector<GroupElement> elems;
    for (int64_t u = 1; u < p; ++u) elems.push_back({{static_cast<int32_t>(u)}});
    auto op = [F](const GroupElement& a, const GroupElement& b) {
        return GroupElement{{static_cast<int32_t>(F.mul(a.data[0], b.data[0]))}};
    };
    auto inv = [F](const GroupElement& a) {
        return GroupElement{{static_cast<int32_t>(F.inv(a.data[0]))}};
    };
    return std::make_shared<FiniteGroup>("units:" + std::to_string(p), std::move(elems),
                                         op, inv, GroupElement{{1}});
}

static GroupElement encode_mat2(const Mat2& m) {
    return GroupElement{{static_cast<int32_t>(m.a), static_cast<int32_t>(m.b),
                         static_cast<int32_t>(m.c), static_cast<int32_t>(m.d)}};
}

static Mat2 decode_mat2(const GroupElement& g) {
    return Mat2{g.data[0], g.data[1], g.data[2], g.data[3]};
}

GroupPtr make_sl2(int64_t p) {
    PrimeField F = make_prime_field(p);
    check_order_cap(p * (p * p - 1), "sl2:" + std::to_string(p));
    std::vector<GroupElement> elems;
    elems.reserve(p * (p * p - 1));
    for (int64_t a = 0; a < p; ++a)
        for (int64_t b = 0; b < p; ++b)
            for (int64_t c = 0; c < p; ++c)
                for (int64_t d = 0; d < p; ++d)
                    if (F.sub(F.mul(a, d), F.mul(b, c)) == 1)
                        elems.push_back(encode_mat2(Mat2{a, b, c, d}));
    auto op = [F](const GroupElement& x, const GroupElement& y) {
        return encode_mat2(mat2_mul(F, decode_mat2(x), decode_mat2(y)));
    };
    auto inv = [F](const GroupElement& x) {
        return encode_mat2(mat2_inv_det1(F, decode_mat2(x)));
    };
    return std::make_shared<FiniteGroup>("sl2:" + std::to_string(p), std::move(elems),
                                         op, inv, GroupElement{{1, 0, 0, 1}});
}

GroupPtr make_psl2(int64_t p) {
    PrimeField F = make_prime_field(p);
    int64_t order = p * (p * p - 1);
    if (p != 2) order /= 2;
    check_order_cap(order, "psl2:" + std::to_string(p));
    std::set<GroupElement> seen;
    for (int64_t a = 0; a < p; ++a)
        for (int64_t b = 0; b < p; ++b)
            for (int64_t c = 0; c < p; ++c)
                for (int64_t d = 0; d < p; ++d)
                    if (F.sub(F.mul(a, d), F.mul(b, c)) == 1)
                        seen.insert(encode_mat2(psl2_canonical(F, Mat2{a, b, c, d})));
    std::vector<GroupElement> elems(seen.begin(), seen.end());
    auto op = [F](const GroupElement& x, const GroupElement& y) {
        return encode_mat2(psl2_canonical(F, mat2_mul(F, decode_mat2(x), decode_mat2(y))));
    };
    auto inv = [F](const GroupElement& x) {
        return encode_mat2(psl2_canonical(F, mat2_inv_det1(F, decode_mat2(x))));
    };
    return std::make_shared<FiniteGroup>("psl2:" + std::to_string(p), std::move(elems),
                                         op, inv, GroupElement{{1, 0, 0, 1}});
}

GroupPtr make_affine(int64_t p) {
    PrimeField F = make_prime_field(p);
    check_order_cap(p * (p - 1), "affine:" + std::to_string(p));
    std::vector<GroupElement> elems;
    elems.reserve(p * (p - 1));
    for (int64_t a = 1; a < p; ++a)
        for (int64_t b = 0; b < p; ++b)
            elems.push_back({{static_cast<int32_t>(a), static_cast<int32_t>(b)}});
    // (a1,b1)(a2,b2) acts as x -> a1(a2 x + b2) + b1
    auto op = [F](const GroupElement& x, const GroupElement& y) {
        return GroupElement{{static_cast<int32_t>(F.mul(x.data[0], y.data[0])),
                             static_cast<int32_t>(F.add(F.mul(x.data[0], y.data[1]), x.data[1]))}};
    };
    auto inv = [F](const GroupElement& x) {
        int64_t ai = F.inv(x.data[0]);
        return GroupElement{{static_cast<int32_t>(ai),
                             static_cast<int32_t>(F.neg(F.mul(ai, x.data[1])))}};
    };
    return std::make_shared<FiniteGroup>("affine:" + std::to_string(p), std::move(elems),
                                         op, inv, GroupElement{{1, 0}});
}

GroupPtr make_vec2(int64_t p) {
    PrimeField F = make_prime_field(p);
    check_order_cap(p * p, "vec2:" + std::to_string(p));
    std::vector<GroupElement> elems;
    elems.reserve(p * p);
    for (int64_t x = 0; x < p; ++x)
        for (int64_t y = 0; y < p; ++y)
            elems.push_back({{static_cast<int32_t>(x), static_cast<int32_t>(y)}});
    auto op = [F](const GroupElement& u, const GroupElement& v) {
        return GroupElement{{static_cast<int32_t>(F.add(u.data[0], v.data[0])),
                             static_cast<int32_t>(F.add(u.data[1], v.data[1]))}};
    };
    auto inv = [F](const GroupElement& u) {
        return GroupElement{{static_cast<int32_t>(F.neg(u.data[0])),
                             static_cast<int32_t>(F.neg(u.data[1]))}};
    };
    return std::make_shared<FiniteGroup>("vec2:" + std::to_string(p), std::move(elems),
                                         op, inv, GroupElement{{0, 0}});
}

static GroupElement concat_elems(const GroupElement& a, const GroupElement& b) {
    GroupElement r = a;
    r.data.insert(r.data.end(), b.data.begin(), b.data.end());
    return r;
}

static std::pair<GroupElement, GroupElement> split_elem(const GroupElement& e, int lw) {
    GroupElement l, r;
    l.data.assign(e.data.begin(), e.data.begin() + lw);
    r.data.assign(e.data.begin() + lw, e.data.end());
    return {l, r};
}

GroupPtr make_product(const GroupPtr& a, const GroupPtr& b) {
    check_order_cap(a->order() * b->order(),
                    "product(" + a->descriptor() + "," + b->descriptor() + ")");
    const int lw = static_cast<int>(a->identity().data.size());
    std::vector<GroupElement> elems;
    elems.reserve(a->order() * b->order());
    for (const auto& x : a->elements())
        for (const auto& y : b->elements())
            elems.push_back(concat_elems(x, y));
    auto op = [a, b, lw](const GroupElement& x, const GroupElement& y) {
        auto [xl, xr] = split_elem(x, lw);
        auto [yl, yr] = split_elem(y, lw);
        return concat_elems(a->mul(xl, yl), b->mul(xr, yr));
    };
    auto inv = [a, b, lw](const GroupElement& x) {
        auto [xl, xr] = split_elem(x, lw);
        return concat_elems(a->inv(xl), b->inv(xr));
    };
    auto g = std::make_shared<FiniteGroup>(
        "product(" + a->descriptor() + "," + b->descriptor() + ")", std::move(elems), op, inv,
        concat_elems(a->identity(), b->identity()));
    g->set_factors(a, b, lw);
    return g;
}

GroupPtr make_group(const std::string& kind, int64_t p) {
    if (kind == "cyclic") return make_cyclic(p);
    if (kind == "units") return make_units(p);
    if (kind == "sl2") return make_sl2(p);
    if (kind == "psl2") return make_psl2(p);
    if (kind == "affine") return make_affine(p);
    if (kind == "vec2") return make_vec2(p);
    throw ParseError("unknown group kind '" + kind + "'");
}

static int64_t parse_int_token(const std::string& tok) {
    size_t pos = 0;
    int64_t v = 0;
    try {
        v = std::stoll(tok, &pos);
    } catch (const std::exception&) {
        throw ParseError("expected an integer, got '" + tok + "'");
    }
    if (pos != tok.size()) throw ParseError("trailing junk in integer '" + tok + "'");
    return v;
}

GroupPtr parse_group(const std::string& descriptor) {
    std::vector<std::string> toks;
    size_t start = 0;
    while (true) {
        size_t colon = descriptor.find(':', start);
        if (colon == std::string::npos) {
            toks.push_back(descriptor.substr(start));
            break;
        }
        toks.push_back(descriptor.substr(start, colon - start));
        start = colon + 1;
    }
    if (toks.size() == 2) return make_group(toks[0], parse_int_token(toks[1]));
    if (toks.size() == 4 && toks[0] == "semidirect" && toks[1] == "sl2" && toks[3] == "vec2") {
        int64_t p = parse_int_token(toks[2]);
        auto sl2 = make_sl2(p);
        auto v2 = make_vec2(p);
        return make_semidirect(sl2_standard_action(sl2, v2));
    }
    throw ParseError("cannot parse group descriptor '" + descriptor + "'");
}

// ---------------------------------------------------------------------------
// Actions and semidirect products
// ---------------------------------------------------------------------------

void validate_action(const GroupAction& action) {
    const auto& P = *action.actor;
    const auto& V = *action.space;
    const int64_t np = P.order(), nv = V.order();

    for (int64_t i = 0; i < nv; ++i)
        for (int64_t j = i + 1; j < nv; ++j)
            if (V.mul(V.element(i), V.element(j)) != V.mul(V.element(j), V.element(i)))
                throw InvalidActionError("space " + V.descriptor() + " is not abelian");

    // mul table of the space, as indices
    std::vector<int64_t> vmul(nv * nv);
    for (int64_t i = 0; i < nv; ++i)
        for (int64_t j = 0; j < nv; ++j)
            vmul[i * nv + j] = V.index_of(V.mul(V.element(i), V.element(j)));

    // permutation of the space induced by each actor element
    std::vector<std::vector<int64_t>> perm(np, std::vector<int64_t>(nv));
    for (int64_t a = 0; a < np; ++a) {
        std::vector<char> hit(nv, 0);
        for (int64_t v = 0; v < nv; ++v) {
            int64_t w = V.index_of(action.apply(P.element(a), V.element(v)));
            perm[a][v] = w;
            if (hit[w])
                throw InvalidActionError("actor element " + format_element(P.element(a)) +
                                         " does not act injectively");
            hit[w] = 1;
        }
    }

    const int64_t e = P.identity_idx();
    for (int64_t v = 0; v < nv; ++v)
        if (perm[e][v] != v)
            throw InvalidActionError("identity does not act trivially");

    for (int64_t a = 0; a < np; ++a)
        for (int64_t u = 0; u < nv; ++u)
            for (int64_t v = 0; v < nv; ++v)
                if (vmul[perm[a][u] * nv + perm[a][v]] != perm[a][vmul[u * nv + v]])
                    throw InvalidActionError("element " + format_element(P.element(a)) +
                                             " does not act by an automorphism");

    for (int64_t a = 0; a < np; ++a)
        for (int64_t b = 0; b < np; ++b) {
            int64_t ab = P.mul_idx(a, b);
            for (int64_t v = 0; v < nv; ++v)
                if (perm[a][perm[b][v]] != perm[ab][v])
                    throw InvalidActionError("action is not compatible with the group law at " +
                                             format_element(P.element(a)) + ", " +
                                             format_element(P.element(b)));
        }
}

GroupAction conjugation_action(const GroupPtr& g) {
    return GroupAction{g, g, [g](const GroupElement& a, const GroupElement& x) {
                           return g->mul(g->mul(a, x), g->inv(a));
                       }};
}

GroupAction sl2_standard_action(const GroupPtr& sl2, const GroupPtr& vec2) {
    if (sl2->identity().data.size() != 4 || vec2->identity().data.size() != 2)
        throw InvalidActionError("expected sl2 actor and vec2 space");
    // both descriptors end in ":p"; fields must match
    auto tail = [](const std::string& d) { return d.substr(d.rfind(':') + 1); };
    if (tail(sl2->descriptor()) != tail(vec2->descriptor()))
        throw InvalidActionError("actor and space are over different fields");
    int64_t p = parse_int_token(tail(sl2->descriptor()));
    PrimeField F = make_prime_field(p);
    return GroupAction{sl2, vec2, [F](const GroupElement& m, const GroupElement& v) {
                           return GroupElement{
                               {static_cast<int32_t>(F.add(F.mul(m.data[0], v.data[0]),
                                                           F.mul(m.data[1], v.data[1]))),
                                static_cast<int32_t>(F.add(F.mul(m.data[2], v.data[0]),
                                                           F.mul(m.data[3], v.data[1])))}};
                       }};
}

GroupPtr make_semidirect(const GroupAction& action) {
    const GroupPtr P = action.actor;
    const GroupPtr V = action.space;
    check_order_cap(P->order() * V->order(),
                    "semidirect(" + P->descriptor() + "," + V->descriptor() + ")");
    validate_action(action);

    const int lw = static_cast<int>(P->identity().data.size());
    std::vector<GroupElement> elems;
    elems.reserve(P->order() * V->order());
    for (const auto& pi : P->elements())
        for (const auto& v : V->elements())
            elems.push_back(concat_elems(pi, v));

    auto apply = action.apply;
    auto op = [P, V, apply, lw](const GroupElement& x, const GroupElement& y) {
        auto [p1, v1] = split_elem(x, lw);
        auto [p2, v2] = split_elem(y, lw);
        return concat_elems(P->mul(p1, p2), V->mul(v1, apply(p1, v2)));
    };
    auto inv = [P, V, apply, lw](const GroupElement& x) {
        auto [p1, v1] = split_elem(x, lw);
        GroupElement pinv = P->inv(p1);
        return concat_elems(pinv, apply(pinv, V->inv(v1)));
    };

    // canonical text form when this is the SL2 standard action
    std::string desc = "semidirect(" + P->descriptor() + "," + V->descriptor() + ")";
    auto tail = [](const std::string& d) { return d.substr(d.rfind(':') + 1); };
    if (P->descriptor().rfind("sl2:", 0) == 0 && V->descriptor().rfind("vec2:", 0) == 0 &&
        tail(P->descriptor()) == tail(V->descriptor()))
        desc = "semidirect:sl2:" + tail(P->descriptor()) + ":vec2";

    auto g = std::make_shared<FiniteGroup>(desc, std::move(elems), op, inv,
                                           concat_elems(P->identity(), V->identity()));
    g->set_factors(P, V, lw);
    return g;
}

GroupElement make_pair_element(const FiniteGroup& g, const GroupElement& left,
                               const GroupElement& right) {
    if (g.left_width() == 0) throw Error(g.descriptor() + " is not a product group");
    GroupElement e = concat_elems(left, right);
    g.index_of(e); // membership check
    return e;
}

GroupElement pair_left(const FiniteGroup& g, const GroupElement& e) {
    if (g.left_width() == 0) throw Error(g.descriptor() + " is not a product group");
    return split_elem(e, g.left_width()).first;
}

GroupElement pair_right(const FiniteGroup& g, const GroupElement& e) {
    if (g.left_width() == 0) throw Error(g.descriptor() + " is not a product group");
    return split_elem(e, g.left_width()).second;
}

// ---------------------------------------------------------------------------
// Generating sets and subgroups
// ---------------------------------------------------------------------------

GeneratingSet make_generating_set(const GroupPtr& parent, std::vector<GroupElement> elems) {
    if (elems.empty()) throw Error("generating set is empty");
    for (const auto& s : elems) {
        parent->index_of(s); // membership
        if (s == parent->identity())
            throw Error("generating set contains the identity");
    }
    std::sort(elems.begin(), elems.end());
    // closed under inversion as a multiset
    std::vector<GroupElement> invs;
    invs.reserve(elems.size());
    for (const auto& s : elems) invs.push_back(parent->inv(s));
    std::sort(invs.begin(), invs.end());
    if (invs != elems)
        throw Error("generating set is not closed under inversion");
    return GeneratingSet{parent, std::move(elems)};
}

GroupPtr generated_subgroup(const GroupPtr& parent, const std::vector<GroupElement>& gens) {
    for (const auto& s : gens) parent->index_of(s);
    std::set<GroupElement> elems{parent->identity()};
    std::deque<GroupElement> queue{parent->identity()};
    while (!queue.empty()) {
        GroupElement x = queue.front();
        queue.pop_front();
        for (const auto& s : gens) {
            GroupElement y = parent->mul(x, s);
            if (elems.insert(y).second) queue.push_back(y);
        }
    }
    // closure under inversion follows from finiteness: x^-1 = x^(ord-1)
    std::vector<GroupElement> out(elems.begin(), elems.end());
    auto op = [parent](const GroupElement& a, const GroupElement& b) { return parent->mul(a, b); };
    auto inv = [parent](const GroupElement& a) { return parent->inv(a); };
    return std::make_shared<FiniteGroup>(parent->descriptor() + ":subgroup", std::move(out), op,
                                         inv, parent->identity());
}

GroupPtr subgroup_from_elements(const GroupPtr& parent, std::vector<GroupElement> elems,
                                const std::string& descriptor) {
    std::set<GroupElement> set(elems.begin(), elems.end());
    if (set.size() != elems.size()) throw NotSubgroupError("duplicate elements in subgroup list");
    for (const auto& x : elems) parent->index_of(x);
    if (set.count(parent->identity()) == 0)
        throw NotSubgroupError("subgroup does not contain the identity");
    for (const auto& x : elems) {
        if (set.count(parent->inv(x)) == 0)
            throw NotSubgroupError("subgroup not closed under inversion at " + format_element(x));
        for (const auto& y : elems)
            if (set.count(parent->mul(x, y)) == 0)
                throw NotSubgroupError("subgroup not closed under product at " +
                                       format_element(x) + "*" + format_element(y));
    }
    auto op = [parent](const GroupElement& a, const GroupElement& b) { return parent->mul(a, b); };
    auto inv = [parent](const GroupElement& a) { return parent->inv(a); };
    return std::make_shared<FiniteGroup>(descriptor, std::move(elems), op, inv,
                                         parent->identity());
}

GroupPtr left_factor_subgroup(const GroupPtr& product) {
    const GroupPtr& L = product->left_factor();
    const GroupPtr& R = product->right_factor();
    if (!L || !R) throw Error(product->descriptor() + " has no stored factorization");
    std::vector<GroupElement> elems;
    elems.reserve(L->order());
    for (const auto& l : L->elements()) elems.push_back(concat_elems(l, R->identity()));
    return subgroup_from_elements(product, std::move(elems),
                                  L->descriptor() + ":embedded");
}

int64_t element_order(const FiniteGroup& g, const GroupElement& x) {
    g.index_of(x);
    GroupElement acc = x;
    for (int64_t k = 1; k <= g.order(); ++k) {
        if (acc == g.identity()) return k;
        acc = g.mul(acc, x);
    }
    throw Error("element order exceeds group order (broken group law)");
}

int64_t smallest_primitive_root(int64_t p) {
    PrimeField f = make_prime_field(p);
    if (p < 3) throw DomainError("smallest_primitive_root needs p >= 3");
    int64_t n = p - 1;
    std::vector<int64_t> prime_factors;
    for (int64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            prime_factors.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) prime_factors.push_back(n);
    for (int64_t g = 2; g < p; ++g) {
        bool primitive = true;
        for (int64_t q : prime_factors) {
            if (f.pow(g, (p - 1) / q) == 1) {
                primitive = false;
                break;
            }
        }
        if (primitive) return g;
    }
    throw Error("no primitive root found (broken field arithmetic)");
}

// ---------------------------------------------------------------------------
// Double cosets, induced characters, orbits
// ---------------------------------------------------------------------------

// Verifies pi is a subgroup of gamma; returns gamma-indices of pi's elements.
static std::vector<int64_t> subgroup_indices(const GroupPtr& gamma, const GroupPtr& pi) {
    std::vector<int64_t> idx;
    idx.reserve(pi->order());
    std::set<GroupElement> set;
    for (const auto& x : pi->elements()) {
        if (!gamma->contains(x))
            throw NotSubgroupError(format_element(x) + " is not in " + gamma->descriptor());
        idx.push_back(gamma->index_of(x));
        set.insert(x);
    }
    if (set.count(gamma->identity()) == 0)
        throw NotSubgroupError("subgroup does not contain the identity of " +
                               gamma->descriptor());
    for (const auto& x : pi->elements()) {
        if (set.count(gamma->inv(x)) == 0)
            throw NotSubgroupError("not closed under inversion in " + gamma->descriptor());
        for (const auto& y : pi->elements())
            if (set.count(gamma->mul(x, y)) == 0)
                throw NotSubgroupError("not closed under product in " + gamma->descriptor());
    }
    return idx;
}

int64_t double_coset_count(const GroupPtr& gamma, const GroupPtr& pi) {
    auto pidx = subgroup_indices(gamma, pi);
    const int64_t n = gamma->order();
    std::vector<GroupElement> pinv;
    pinv.reserve(pidx.size());
    for (int64_t i : pidx) pinv.push_back(gamma->inv(gamma->element(i)));

    std::vector<char> seen(n, 0);
    int64_t count = 0;
    for (int64_t g = 0; g < n; ++g) {
        if (seen[g]) continue;
        ++count;
        for (int64_t a : pidx) {
            GroupElement ag = gamma->mul(gamma->element(a), gamma->element(g));
            for (const auto& binv : pinv)
                seen[gamma->index_of(gamma->mul(ag, binv))] = 1;
        }
    }
    return count;
}

int64_t induced_character_norm(const GroupPtr& gamma, const GroupPtr& pi) {
    auto pidx = subgroup_indices(gamma, pi);
    const int64_t n = gamma->order();

    // left cosets x Pi
    std::vector<int64_t> coset_id(n, -1);
    std::vector<int64_t> reps;
    for (int64_t x = 0; x < n; ++x) {
        if (coset_id[x] >= 0) continue;
        int64_t cid = static_cast<int64_t>(reps.size());
        reps.push_back(x);
        for (int64_t b : pidx)
            coset_id[gamma->mul_idx(x, b)] = cid;
    }
    const int64_t k = static_cast<int64_t>(reps.size());

    int64_t total = 0;
    for (int64_t g = 0; g < n; ++g) {
        int64_t fix = 0;
        for (int64_t cid = 0; cid < k; ++cid)
            if (coset_id[gamma->mul_idx(g, reps[cid])] == cid) ++fix;
        total += fix * fix;
    }
    if (total % n != 0)
        throw Error("character norm sum " + std::to_string(total) +
                    " is not divisible by the group order " + std::to_string(n));
    return total / n;
}

namespace {
struct UnionFind {
    std::vector<int64_t> parent;
    explicit UnionFind(int64_t n) : parent(n) {
        for (int64_t i = 0; i < n; ++i) parent[i] = i;
    }
    int64_t find(int64_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    void unite(int64_t a, int64_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[a] = b;
    }
};
} // namespace

int64_t orbit_count(const GroupPtr& gamma, const GroupPtr& pi) {
    auto pidx = subgroup_indices(gamma, pi);
    const int64_t n = gamma->order();
    UnionFind uf(n);
    for (int64_t g = 0; g < n; ++g) {
        const GroupElement& ge = gamma->element(g);
        for (int64_t a : pidx) {
            uf.unite(g, gamma->index_of(gamma->mul(gamma->element(a), ge)));
            uf.unite(g, gamma->index_of(gamma->mul(ge, gamma->element(a))));
        }
    }
    int64_t count = 0;
    for (int64_t i = 0; i < n; ++i)
        if (uf.find(i) == i) ++count;
    return count;
}

// ---------------------------------------------------------------------------
// SL2 <-> PSL2
// ---------------------------------------------------------------------------

std::vector<GroupElement> quotient_preimage_sl2(int64_t p,
                                                const std::vector<GroupElement>& psl2_elems) {
    PrimeField F = make_prime_field(p);
    std::vector<GroupElement> out;
    out.reserve(psl2_elems.size() * (p == 2 ? 1 : 2));
    for (const auto& g : psl2_elems) {
        if (g.data.size() != 4) throw Error("not a 2x2 matrix element: " + format_element(g));
        out.push_back(g);
        if (p != 2) {
            Mat2 m = decode_mat2(g);
            out.push_back(encode_mat2(Mat2{F.neg(m.a), F.neg(m.b), F.neg(m.c), F.neg(m.d)}));
        }
    }
    return out;
}

} // namespace emlab
