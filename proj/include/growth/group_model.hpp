#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace growth {

inline constexpr std::size_t kMaxRank = 4;

/// Fixed-width integer tuple; coordinates past the model's rank stay zero.
struct Element {
  std::array<std::int32_t, kMaxRank> c{};

  friend auto operator<=>(const Element&, const Element&) = default;
};

/// Packed canonical code. Injective on every element whose coordinates fit in
/// 16 signed bits; encode() throws outside that range rather than collide.
using Code = std::uint64_t;

/**
 * An enumerable group: canonical encoding, multiplication, inverse and named
 * finite generating sets. Implementations are stateless and thread-safe.
 */
class GroupModel {
 public:
  virtual ~GroupModel() = default;

  virtual std::string name() const = 0;
  /// Number of meaningful coordinates in an Element.
  virtual std::size_t rank() const = 0;
  virtual Element multiply(const Element& g, const Element& h) const = 0;
  virtual Element invert(const Element& g) const = 0;
  /// True for Z^d; lets callers pick cheaper checks.
  virtual bool abelian() const = 0;

  Element identity() const { return Element{}; }

  Code encode(const Element& g) const;
  Element decode(Code code) const;

  const std::map<std::string, std::vector<Element>>& generating_sets() const { return sets_; }
  /// Throws InvalidInput for unknown labels.
  const std::vector<Element>& generating_set(const std::string& label) const;

  /// Parses "[[1,0],[0,1]]"-style tuples written with exactly rank() entries each.
  std::vector<Element> parse_elements(const std::string& json) const;
  std::string format(const Element& g) const;

 protected:
  void add_generating_set(std::string label, std::vector<Element> elements);

 private:
  std::map<std::string, std::vector<Element>> sets_;
};

/// Z^d under addition. Named sets: "standard" (±e_i), "standard+id", and for
/// d = 2 also "hex" (±e1, ±e2, ±(e1+e2)) and "tripod" ({0, e1, e2, -e1-e2}).
class LatticeModel final : public GroupModel {
 public:
  explicit LatticeModel(std::size_t dimension);

  std::string name() const override { return "Z" + std::to_string(dimension_); }
  std::size_t rank() const override { return dimension_; }
  Element multiply(const Element& g, const Element& h) const override;
  Element invert(const Element& g) const override;
  bool abelian() const override { return true; }

 private:
  std::size_t dimension_;
};

/// Discrete Heisenberg group H3(Z): (x,y,z)(x',y',z') = (x+x', y+y', z+z'+x*y').
/// Named sets: "standard" ({x^±1, y^±1}) and "standard+id".
class HeisenbergModel final : public GroupModel {
 public:
  HeisenbergModel();

  std::string name() const override { return "heisenberg"; }
  std::size_t rank() const override { return 3; }
  Element multiply(const Element& g, const Element& h) const override;
  Element invert(const Element& g) const override;
  bool abelian() const override { return false; }
};

/// "z1".."z4" or "heisenberg".
std::unique_ptr<GroupModel> make_model(const std::string& name);

Element make_element(std::initializer_list<std::int32_t> coords);

}  // namespace growth
