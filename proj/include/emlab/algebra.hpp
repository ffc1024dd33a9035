#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "emlab/errors.hpp"

namespace emlab {

// ---------------------------------------------------------------------------
// Prime fields
// ---------------------------------------------------------------------------

// Arithmetic in F_p for prime p.  All values are canonical representatives in
// [0, p).  Inverse is computed by the extended Euclidean algorithm.
struct PrimeField {
    int64_t p;

    int64_t add(int64_t a, int64_t b) const { return (a + b) % p; }
    int64_t sub(int64_t a, int64_t b) const { return ((a - b) % p + p) % p; }
    int64_t mul(int64_t a, int64_t b) const { return (a * b) % p; }
    int64_t neg(int64_t a) const { return (p - a % p) % p; }
    int64_t inv(int64_t a) const;
    int64_t pow(int64_t a, int64_t e) const;
    int64_t reduce(int64_t a) const { return (a % p + p) % p; }
};

bool is_prime(int64_t n);

// Throws NotPrimeError unless p is prime.
PrimeField make_prime_field(int64_t p);

// ---------------------------------------------------------------------------
// Group elements
// ---------------------------------------------------------------------------

// An element is a flat vector of small integers whose meaning depends on the
// owning group: cyclic = {k}; units = {u}; sl2/psl2 = row-major 2x2 matrix;
// affine = {a, b} meaning x -> a x + b; products and semidirect products
// concatenate the components (left block first).
struct GroupElement {
    std::vector<int32_t> data;

    auto operator<=>(const GroupElement&) const = default;
};

// 2x2 matrix over F_p, row-major.  Helper for SL2/PSL2 construction.
struct Mat2 {
    int64_t a, b, c, d;
};

Mat2 mat2_mul(const PrimeField& F, const Mat2& x, const Mat2& y);
Mat2 mat2_inv_det1(const PrimeField& F, const Mat2& x);

// Canonical representative of +/-M in PSL(2,p): the first nonzero entry in
// row-major order lies in [1, (p-1)/2]; otherwise negate.  Identity map for
// p = 2.
Mat2 psl2_canonical(const PrimeField& F, const Mat2& x);

// ---------------------------------------------------------------------------
// Finite groups
// ---------------------------------------------------------------------------

class FiniteGroup;
using GroupPtr = std::shared_ptr<const FiniteGroup>;

// A finite group with a full element table.  Multiplication and inversion are
// stored as closures so subgroups and products can reuse the parent's law.
// Elements are indexed 0..order()-1 in the sorted order of their encodings;
// index 0 is not necessarily the identity.
class FiniteGroup {
public:
    FiniteGroup(std::string descriptor,
                std::vector<GroupElement> elements,
                std::function<GroupElement(const GroupElement&, const GroupElement&)> op,
                std::function<GroupElement(const GroupElement&)> inv,
                GroupElement identity);

    int64_t order() const { return static_cast<int64_t>(elements_.size()); }
    const std::string& descriptor() const { return descriptor_; }
    const GroupElement& identity() const { return id_; }
    const GroupElement& element(int64_t idx) const { return elements_[idx]; }
    const std::vector<GroupElement>& elements() const { return elements_; }

    GroupElement mul(const GroupElement& a, const GroupElement& b) const { return op_(a, b); }
    GroupElement inv(const GroupElement& a) const { return inv_(a); }

    // Index of an element; throws Error if the encoding is not in the group.
    int64_t index_of(const GroupElement& g) const;
    bool contains(const GroupElement& g) const { return index_.count(g) != 0; }

    int64_t mul_idx(int64_t a, int64_t b) const {
        return index_of(op_(elements_[a], elements_[b]));
    }
    int64_t inv_idx(int64_t a) const { return index_of(inv_(elements_[a])); }
    int64_t identity_idx() const { return id_idx_; }

    // For product and semidirect-product groups: the number of leading data
    // slots taken by the left component.  0 for atomic groups.
    int left_width() const { return left_width_; }
    const GroupPtr& left_factor() const { return left_; }
    const GroupPtr& right_factor() const { return right_; }

    void set_factors(GroupPtr left, GroupPtr right, int left_width) {
        left_ = std::move(left);
        right_ = std::move(right);
        left_width_ = left_width;
    }

private:
    std::string descriptor_;
    std::vector<GroupElement> elements_;
    std::map<GroupElement, int64_t> index_;
    std::function<GroupElement(const GroupElement&, const GroupElement&)> op_;
    std::function<GroupElement(const GroupElement&)> inv_;
    GroupElement id_;
    int64_t id_idx_;
    GroupPtr left_;
    GroupPtr right_;
    int left_width_ = 0;
};

// Hard cap on constructed group order.
constexpr int64_t kGroupOrderCap = 100000;

// Factories.  All throw NotPrimeError for composite p where a prime is
// required and TooLargeError when the order would exceed kGroupOrderCap.
GroupPtr make_cyclic(int64_t n);
GroupPtr make_units(int64_t p);                 // (Z/p)^x, order p-1
GroupPtr make_sl2(int64_t p);                   // order p(p^2-1)
GroupPtr make_psl2(int64_t p);                  // order p(p^2-1)/gcd(2, p-1)
GroupPtr make_affine(int64_t p);                // x -> a x + b, order p(p-1)
GroupPtr make_vec2(int64_t p);                  // (F_p^2, +), order p^2
GroupPtr make_product(const GroupPtr& a, const GroupPtr& b);

// "cyclic", "units", "sl2", "psl2", "affine", or "vec2" with parameter p.
GroupPtr make_group(const std::string& kind, int64_t p);

// Parse a descriptor like "sl2:5", "affine:13", "cyclic:12", "vec2:7", or
// "semidirect:sl2:3:vec2" (SL(2,p) acting on F_p^2 by matrix-vector
// multiplication).  Throws ParseError for anything else.
GroupPtr parse_group(const std::string& descriptor);

// Render an element for diagnostics: comma-separated data inside parentheses.
std::string format_element(const GroupElement& g);

// ---------------------------------------------------------------------------
// Group actions and semidirect products
// ---------------------------------------------------------------------------

// A left action of `actor` on the elements of the abelian group `space` by
// automorphisms.  apply(pi, v) must satisfy: apply(e, v) = v,
// apply(a, apply(b, v)) = apply(ab, v), and v -> apply(pi, v) is an
// automorphism of `space` for every pi.
struct GroupAction {
    GroupPtr actor;
    GroupPtr space;
    std::function<GroupElement(const GroupElement&, const GroupElement&)> apply;
};

// Exhaustively checks the action axioms (and that `space` is abelian).
// Throws InvalidActionError with a description of the first violation.
void validate_action(const GroupAction& action);

// Pi acting on itself (or any group it equals) by left multiplication is NOT
// an automorphism action; this helper is instead conjugation, kept for tests.
GroupAction conjugation_action(const GroupPtr& g);

// SL(2,p) acting on F_p^2 (column vectors) by matrix-vector multiplication.
GroupAction sl2_standard_action(const GroupPtr& sl2, const GroupPtr& vec2);

// Semidirect product Pi x| V with law
//   (pi1, v1)(pi2, v2) = (pi1 pi2, v1 + pi1 . v2)
// and inverse (pi^-1, pi^-1 . (-v)).  Validates the action first.
GroupPtr make_semidirect(const GroupAction& action);

// Build the element of a product/semidirect group from its two halves.
GroupElement make_pair_element(const FiniteGroup& g,
                               const GroupElement& left,
                               const GroupElement& right);
GroupElement pair_left(const FiniteGroup& g, const GroupElement& e);
GroupElement pair_right(const FiniteGroup& g, const GroupElement& e);

// ---------------------------------------------------------------------------
// Generating sets and subgroups
// ---------------------------------------------------------------------------

// A symmetric generating multiset is represented as a sorted vector of
// elements of `parent` (duplicates allowed: they become edge weights).
struct GeneratingSet {
    GroupPtr parent;
    std::vector<GroupElement> elems;
};

// Validates membership, sorts, and checks the set is identity-free and closed
// under inversion (as a multiset).  Throws Error on violation.
GeneratingSet make_generating_set(const GroupPtr& parent,
                                  std::vector<GroupElement> elems);

// Closure of `gens` inside `parent` under multiplication; returns the
// subgroup as a FiniteGroup sharing the parent's law.
GroupPtr generated_subgroup(const GroupPtr& parent,
                            const std::vector<GroupElement>& gens);

// Wrap an explicit element list as a subgroup of `parent`; throws
// NotSubgroupError unless the list is closed under product and inverse and
// contains the identity.
GroupPtr subgroup_from_elements(const GroupPtr& parent,
                                std::vector<GroupElement> elems,
                                const std::string& descriptor);

// The copy of the left factor {(pi, 0)} inside a semidirect or direct
// product.
GroupPtr left_factor_subgroup(const GroupPtr& product);

// Order of g in its group (smallest k >= 1 with g^k = e).
int64_t element_order(const FiniteGroup& g, const GroupElement& x);

// Smallest generator of (Z/p)^x, found by order testing against the prime
// factors of p - 1.  Requires prime p >= 3.
int64_t smallest_primitive_root(int64_t p);

// ---------------------------------------------------------------------------
// Double cosets and induced characters
// ---------------------------------------------------------------------------

// Number of double cosets Pi \ Gamma / Pi, by direct partition of Gamma.
// `pi` must be a subgroup of `gamma` (elements of gamma).
int64_t double_coset_count(const GroupPtr& gamma, const GroupPtr& pi);

// Norm <chi, chi> of the character of the permutation representation of
// Gamma on Gamma/Pi: (1/|Gamma|) sum_g |fix(g)|^2.  The sum is always
// divisible by |Gamma|; exact integer division is asserted.
int64_t induced_character_norm(const GroupPtr& gamma, const GroupPtr& pi);

// Number of orbits of Pi x Pi acting on Gamma by (a, b) . g = a g b^-1.
int64_t orbit_count(const GroupPtr& gamma, const GroupPtr& pi);

// ---------------------------------------------------------------------------
// SL2 <-> PSL2
// ---------------------------------------------------------------------------

// Preimages in SL(2,p) of a PSL(2,p) element set: each element lifts to
// {M, -M} (coinciding for p = 2).  Order of the result follows the input,
// with M before -M.
std::vector<GroupElement> quotient_preimage_sl2(int64_t p,
                                                const std::vector<GroupElement>& psl2_elems);

} // namespace emlab
