#include "growth/group_walk.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <thread>

#include "growth/errors.hpp"

namespace growth {

namespace {

void sort_unique(ElementSet& s) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
}

void check_budget(std::size_t size, const ProductOptions& opts, std::size_t n) {
  if (size > opts.budget_elements) {
    throw BudgetExceeded("group-walk", size, opts.budget_elements,
                         "product set size at n=" + std::to_string(n));
  }
}

bool contains_identity(std::span<const Element> u) {
  return std::find(u.begin(), u.end(), Element{}) != u.end();
}

// a * u for every a in `a`, with frontier chunks spread over worker threads.
// Chunk boundaries depend only on the input, and the merged result is sorted,
// so the output never depends on the thread count.
ElementSet product_raw(const GroupModel& model, std::span<const Code> a,
                       std::span<const Element> u, const ProductOptions& opts) {
  const unsigned threads =
      std::max(1u, std::min<unsigned>(opts.threads, static_cast<unsigned>(a.size() / 4096 + 1)));
  auto work = [&](std::size_t lo, std::size_t hi, ElementSet& out) {
    out.reserve((hi - lo) * u.size());
    for (std::size_t i = lo; i < hi; ++i) {
      const Element g = model.decode(a[i]);
      for (const auto& h : u) out.push_back(model.encode(model.multiply(g, h)));
    }
    sort_unique(out);
  };
  if (threads == 1) {
    ElementSet out;
    work(0, a.size(), out);
    return out;
  }
  std::vector<ElementSet> parts(threads);
  std::vector<std::exception_ptr> errors(threads);
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        try {
          work(a.size() * t / threads, a.size() * (t + 1) / threads, parts[t]);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  ElementSet out;
  for (auto& p : parts) {
    ElementSet merged;
    merged.reserve(out.size() + p.size());
    std::set_union(out.begin(), out.end(), p.begin(), p.end(), std::back_inserter(merged));
    out.swap(merged);
  }
  return out;
}

// Integer determinant by fraction-free elimination (sizes here are <= 4).
std::int64_t determinant(std::vector<std::vector<std::int64_t>> m) {
  const std::size_t n = m.size();
  std::int64_t sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && m[swap_row][k] == 0) ++swap_row;
      if (swap_row == n) return 0;
      std::swap(m[k], m[swap_row]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
      }
    }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

// gcd of all r x r minors of the rows; 1 iff the rows span Z^r.
std::int64_t lattice_index(const std::vector<std::vector<std::int64_t>>& rows, std::size_t r) {
  std::int64_t g = 0;
  std::vector<std::size_t> pick(r);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t depth, std::size_t start) {
    if (g == 1) return;
    if (depth == r) {
      std::vector<std::vector<std::int64_t>> m;
      for (auto i : pick) m.push_back(rows[i]);
      g = std::gcd(g, determinant(m));
      return;
    }
    for (std::size_t i = start; i < rows.size(); ++i) {
      pick[depth] = i;
      rec(depth + 1, i + 1);
    }
  };
  rec(0, 0);
  return std::abs(g);
}

// Grows P_m = U^m by expanding only the newest layer: when 1 is in U,
// U^{m+1} = U^m together with (U^m \ U^{m-1}) U.
class PowerWalker {
 public:
  PowerWalker(const GroupModel& model, ElementSet start, std::span<const Element> u,
              const ProductOptions& opts)
      : model_(model), u_(u.begin(), u.end()), opts_(opts), all_(std::move(start)), layer_(all_) {}

  void step() {
    ElementSet grown = product_raw(model_, layer_, u_, opts_);
    ElementSet fresh = set_difference(grown, all_);
    check_budget(all_.size() + fresh.size(), opts_, ++steps_);
    all_ = set_union(all_, fresh);
    layer_ = std::move(fresh);
  }

  const ElementSet& all() const { return all_; }
  const ElementSet& layer() const { return layer_; }

 private:
  const GroupModel& model_;
  std::vector<Element> u_;
  const ProductOptions& opts_;
  ElementSet all_;
  ElementSet layer_;
  std::size_t steps_ = 0;
};

}  // namespace

const ElementSet& ProductSequence::set(std::size_t n) const {
  auto it = retained.find(n);
  if (it == retained.end()) {
    throw InvalidInput("product set N_" + std::to_string(n) +
                       " was not retained (raise the retain horizon)");
  }
  return it->second;
}

ElementSet make_set(const GroupModel& model, std::span<const Element> elements) {
  ElementSet s;
  s.reserve(elements.size());
  for (const auto& g : elements) s.push_back(model.encode(g));
  sort_unique(s);
  return s;
}

std::vector<Element> decode_set(const GroupModel& model, const ElementSet& set) {
  std::vector<Element> out;
  out.reserve(set.size());
  for (Code c : set) out.push_back(model.decode(c));
  return out;
}

ElementSet set_difference(const ElementSet& a, const ElementSet& b) {
  ElementSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

ElementSet set_union(const ElementSet& a, const ElementSet& b) {
  ElementSet out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

bool includes(const ElementSet& outer, const ElementSet& inner) {
  return std::includes(outer.begin(), outer.end(), inner.begin(), inner.end());
}

ElementSet right_product(const GroupModel& model, const ElementSet& a,
                         std::span<const Element> factor, const ProductOptions& opts) {
  auto out = product_raw(model, a, factor, opts);
  check_budget(out.size(), opts, 1);
  return out;
}

ElementSet inverse_set(const GroupModel& model, const ElementSet& a) {
  ElementSet out;
  out.reserve(a.size());
  for (Code c : a) out.push_back(model.encode(model.invert(model.decode(c))));
  sort_unique(out);
  return out;
}

std::vector<Element> with_identity(std::span<const Element> u) {
  std::vector<Element> out(u.begin(), u.end());
  if (!contains_identity(u)) out.insert(out.begin(), Element{});
  return out;
}

void require_generating(const GroupModel& model, std::span<const Element> u,
                        const ProductOptions& opts) {
  if (u.empty()) throw NotGenerating("empty generating set");
  // Abelianization: Z^d itself, or the (x, y) projection for H3(Z).
  const std::size_t r = model.abelian() ? model.rank() : 2;
  std::vector<std::vector<std::int64_t>> rows;
  for (const auto& g : u) {
    std::vector<std::int64_t> row(g.c.begin(), g.c.begin() + static_cast<std::ptrdiff_t>(r));
    if (std::any_of(row.begin(), row.end(), [](auto v) { return v != 0; })) rows.push_back(row);
  }
  const std::int64_t index = rows.size() < r ? 0 : lattice_index(rows, r);
  if (index != 1) {
    throw NotGenerating(model.name() + ": the set spans " +
                        (index == 0 ? std::string("a lattice of lower rank")
                                    : "a sublattice of index " + std::to_string(index)) +
                        " in the abelianization Z^" + std::to_string(r));
  }
  // Group generated; now every inverse must be a positive word.
  const auto normalized = with_identity(u);
  std::vector<Element> inverses;
  for (const auto& g : u) inverses.push_back(model.invert(g));
  auto found = generating_containment(model, normalized, inverses, opts.generation_search, opts);
  if (!found.m) {
    std::string missing;
    for (const auto& g : u) {
      ContainmentResult one =
          generating_containment(model, normalized, std::vector<Element>{model.invert(g)},
                                 opts.generation_search, opts);
      if (!one.m) {
        missing = model.format(model.invert(g));
        break;
      }
    }
    throw NotGenerating(model.name() + ": inverse " + missing + " is not in U^m for m <= " +
                        std::to_string(found.searched) +
                        "; the powers of U form a semigroup, not the group");
  }
}

ProductSequence product_powers(const GroupModel& model, std::span<const Element> u,
                               std::size_t n_max, const ProductOptions& opts) {
  require_generating(model, u, opts);
  ProductSequence seq;
  seq.model = model.name();
  const auto normalized = with_identity(u);
  if (!contains_identity(u)) seq.identity_adjoined.push_back(0);
  seq.factors.assign(n_max, normalized);
  seq.factor_labels.assign(n_max, "U");
  seq.factor_offset = 0;

  PowerWalker walker(model, ElementSet{model.encode(Element{})}, normalized, opts);
  seq.sizes.push_back(1);
  seq.retained.emplace(0, walker.all());
  for (std::size_t n = 1; n <= n_max; ++n) {
    walker.step();
    seq.sizes.push_back(walker.all().size());
    if (n <= opts.retain_horizon) seq.retained.emplace(n, walker.all());
  }
  return seq;
}

ProductSequence varying_products(const GroupModel& model,
                                 const std::vector<std::vector<Element>>& factors,
                                 std::span<const Element> k_lower,
                                 std::span<const Element> k_upper, const ProductOptions& opts) {
  if (factors.empty()) throw InvalidInput("varying products need at least one factor");
  require_generating(model, k_lower, opts);
  const auto lower = make_set(model, k_lower);
  const auto upper = make_set(model, with_identity(k_upper));

  ProductSequence seq;
  seq.model = model.name();
  seq.factor_offset = 1;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    const auto fi = make_set(model, factors[i]);
    if (!includes(fi, lower)) {
      throw InvalidInput("factor U_" + std::to_string(i) + " does not contain the certified K");
    }
    if (!includes(upper, make_set(model, with_identity(factors[i])))) {
      throw InvalidInput("factor U_" + std::to_string(i) + " is not inside the certified K'");
    }
    if (!contains_identity(factors[i])) seq.identity_adjoined.push_back(i);
    seq.factors.push_back(with_identity(factors[i]));
    seq.factor_labels.push_back("U_" + std::to_string(i));
  }

  ElementSet current = make_set(model, seq.factors[0]);
  check_budget(current.size(), opts, 0);
  seq.sizes.push_back(current.size());
  seq.retained.emplace(0, current);
  for (std::size_t n = 1; n < seq.factors.size(); ++n) {
    current = product_raw(model, current, seq.factors[n], opts);
    check_budget(current.size(), opts, n);
    seq.sizes.push_back(current.size());
    if (n <= opts.retain_horizon) seq.retained.emplace(n, current);
  }
  return seq;
}

std::vector<Rational> folner_ratios(std::span<const std::uint64_t> sizes) {
  if (sizes.size() < 2) throw InvalidInput("Folner ratios need at least two sizes");
  std::vector<Rational> out;
  out.reserve(sizes.size() - 1);
  for (std::size_t n = 0; n + 1 < sizes.size(); ++n) {
    if (sizes[n] == 0) throw InvalidInput("empty set in a product sequence");
    if (sizes[n + 1] < sizes[n]) throw InvalidInput("product sizes must be nondecreasing");
    out.push_back(make_ratio(sizes[n + 1] - sizes[n], sizes[n]));
  }
  return out;
}

Rational regularity_constant(const GroupModel& model, const ProductSequence& seq, std::size_t n,
                             const ProductOptions& opts) {
  const ElementSet& nn = seq.set(n);
  // N^-1 N = N^-1 U_0 ... U_k, using the stored factors.
  ElementSet acc = inverse_set(model, nn);
  const std::size_t count = n + seq.factor_offset;
  if (count > seq.factors.size()) throw InvalidInput("not enough stored factors");
  for (std::size_t i = 0; i < count; ++i) {
    acc = product_raw(model, acc, seq.factors[i], opts);
    check_budget(acc.size(), opts, n);
  }
  return make_ratio(acc.size(), nn.size());
}

ContainmentResult generating_containment(const GroupModel& model, std::span<const Element> u,
                                         std::span<const Element> v, std::size_t m_max,
                                         const ProductOptions& opts) {
  if (!contains_identity(u)) throw InvalidInput("generating_containment requires 1 in U");
  const auto target = make_set(model, v);
  ContainmentResult result;
  PowerWalker walker(model, make_set(model, u), u, opts);
  for (std::size_t m = 1; m <= m_max; ++m) {
    if (m > 1) walker.step();
    result.searched = m;
    if (includes(walker.all(), target)) {
      result.m = m;
      return result;
    }
  }
  return result;
}

std::vector<std::vector<Element>> word_shells(const GroupModel& model, std::span<const Element> u,
                                              std::size_t n_max, const ProductOptions& opts) {
  const auto normalized = with_identity(u);
  PowerWalker walker(model, ElementSet{model.encode(Element{})}, normalized, opts);
  std::vector<std::vector<Element>> out;
  out.push_back({Element{}});
  for (std::size_t n = 1; n <= n_max; ++n) {
    walker.step();
    out.push_back(decode_set(model, walker.layer()));
  }
  return out;
}

std::vector<ShellInclusion> check_shell_inclusions(const GroupModel& model,
                                                   std::span<const Element> u, std::size_t n_max,
                                                   std::span<const std::size_t> ks,
                                                   const ProductOptions& opts) {
  const auto normalized = with_identity(u);
  const std::size_t k_max = ks.empty() ? 0 : *std::max_element(ks.begin(), ks.end());
  // Powers U^0 .. U^{n_max + k_max}.
  std::vector<ElementSet> powers;
  PowerWalker walker(model, ElementSet{model.encode(Element{})}, normalized, opts);
  powers.push_back(walker.all());
  for (std::size_t m = 1; m <= n_max + k_max; ++m) {
    walker.step();
    powers.push_back(walker.all());
  }
  auto shell = [&](std::size_t lo, std::size_t hi) { return set_difference(powers[hi], powers[lo]); };
  // A U^j by layer expansion (1 is in U, so A U^j grows monotonically).
  auto expand = [&](const ElementSet& a, std::size_t j) {
    PowerWalker w(model, a, normalized, opts);
    for (std::size_t i = 0; i < j; ++i) w.step();
    return w.all();
  };

  std::vector<ShellInclusion> out;
  for (std::size_t k : ks) {
    if (k < 4) throw InvalidInput("shell inclusions need k >= 4");
    for (std::size_t n = k; n <= n_max; ++n) {
      ShellInclusion rec;
      rec.n = n;
      rec.k = k;
      const auto outer = shell(n, n + k);
      const auto middle = shell(n - k / 2, n - k / 2 + 1);
      const auto inner = shell(n - k, n);
      rec.outer_shell = outer.size();
      rec.middle_shell = middle.size();
      rec.inner_shell = inner.size();
      rec.outer_covered = includes(expand(middle, 2 * k), outer);
      rec.inner_contains = includes(inner, expand(middle, k / 4));
      out.push_back(rec);
    }
  }
  return out;
}

}  // namespace growth
