#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "growth/group_model.hpp"
#include "growth/rational.hpp"

namespace growth {

/// Sorted, duplicate-free canonical codes.
using ElementSet = std::vector<Code>;

struct ProductOptions {
  /// Hard cap on the size of any single product set.
  std::size_t budget_elements = 40'000'000;
  /// Sets N_n with n <= retain_horizon are kept for later set-level queries.
  std::size_t retain_horizon = 0;
  unsigned threads = 1;
  /// Largest m tried when checking that every inverse lies in some U^m.
  std::size_t generation_search = 64;
};

/**
 * Sizes of a nested product sequence, plus the factors that produced it.
 *
 * For product_powers the n-th set is U^n (so sizes[0] = 1); for
 * varying_products it is N_n = U_0 ... U_n (so sizes[0] = |U_0|). Either way
 * set n is the product of factors[0 .. n + factor_offset).
 */
struct ProductSequence {
  std::string model;
  std::vector<std::string> factor_labels;
  std::vector<std::vector<Element>> factors;
  std::size_t factor_offset = 0;
  std::vector<std::uint64_t> sizes;
  /// Factors that did not contain the identity and had it adjoined.
  std::vector<std::size_t> identity_adjoined;
  std::map<std::size_t, ElementSet> retained;

  /// Throws InvalidInput when set n was not retained.
  const ElementSet& set(std::size_t n) const;
};

ElementSet make_set(const GroupModel& model, std::span<const Element> elements);
std::vector<Element> decode_set(const GroupModel& model, const ElementSet& set);
ElementSet set_difference(const ElementSet& a, const ElementSet& b);
ElementSet set_union(const ElementSet& a, const ElementSet& b);
bool includes(const ElementSet& outer, const ElementSet& inner);

/// A * U = {a u}, computed over frontier chunks and merged deterministically.
ElementSet right_product(const GroupModel& model, const ElementSet& a,
                         std::span<const Element> factor, const ProductOptions& opts = {});
ElementSet inverse_set(const GroupModel& model, const ElementSet& a);

/// U with the identity adjoined when missing.
std::vector<Element> with_identity(std::span<const Element> u);

/**
 * Throws NotGenerating unless the union of the powers of U is the whole group.
 * Two checks: the image of U in the abelianization spans Z^r as a lattice
 * (for Z^d and H3(Z) this is equivalent to generating the group), and every
 * u^-1 lies in some U^m, m <= opts.generation_search, so the semigroup
 * generated is a group.
 */
void require_generating(const GroupModel& model, std::span<const Element> u,
                        const ProductOptions& opts = {});

/// sizes[n] = |U^n| for n = 0..n_max, with U normalized to contain 1.
ProductSequence product_powers(const GroupModel& model, std::span<const Element> u,
                               std::size_t n_max, const ProductOptions& opts = {});

/**
 * sizes[n] = |U_0 ... U_n| for n < factors.size(). Every factor must contain
 * `k_lower` and lie inside `k_upper`; `k_lower` must generate. Factors are
 * normalized to contain 1 before the product is taken.
 */
ProductSequence varying_products(const GroupModel& model,
                                 const std::vector<std::vector<Element>>& factors,
                                 std::span<const Element> k_lower,
                                 std::span<const Element> k_upper,
                                 const ProductOptions& opts = {});

/// ratio[n] = (sizes[n+1] - sizes[n]) / sizes[n].
std::vector<Rational> folner_ratios(std::span<const std::uint64_t> sizes);

/// |N_n^-1 N_n| / |N_n|. Needs set n retained.
Rational regularity_constant(const GroupModel& model, const ProductSequence& seq, std::size_t n,
                             const ProductOptions& opts = {});

struct ContainmentResult {
  /// Smallest m >= 1 with V in U^m, when found within the search bound.
  std::optional<std::size_t> m;
  /// Largest power examined.
  std::size_t searched = 0;
};

/// Requires 1 in U.
ContainmentResult generating_containment(const GroupModel& model, std::span<const Element> u,
                                         std::span<const Element> v, std::size_t m_max,
                                         const ProductOptions& opts = {});

/// U^0 = {1}, U^1 \ U^0, ... as element lists (U normalized to contain 1).
std::vector<std::vector<Element>> word_shells(const GroupModel& model, std::span<const Element> u,
                                              std::size_t n_max, const ProductOptions& opts = {});

/**
 * The two shell inclusions behind shell doubling in groups, checked as exact
 * set containments with C_{a,b} = U^b \ U^a:
 *   outer: C_{n,n+k} is inside C_{n-k/2,n-k/2+1} U^{2k}
 *   inner: C_{n-k/2,n-k/2+1} U^{k/4} is inside C_{n-k,n}
 * k/2 and k/4 are integer parts.
 */
struct ShellInclusion {
  std::size_t n = 0;
  std::size_t k = 0;
  std::uint64_t outer_shell = 0;   // |C_{n,n+k}|
  std::uint64_t middle_shell = 0;  // |C_{n-k/2,n-k/2+1}|
  std::uint64_t inner_shell = 0;   // |C_{n-k,n}|
  bool outer_covered = false;
  bool inner_contains = false;
};

/// Every (n, k) with k in `ks`, 4 <= k <= n <= n_max. U is normalized to contain 1.
std::vector<ShellInclusion> check_shell_inclusions(const GroupModel& model,
                                                   std::span<const Element> u, std::size_t n_max,
                                                   std::span<const std::size_t> ks,
                                                   const ProductOptions& opts = {});

}  // namespace growth
