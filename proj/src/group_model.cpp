#include "growth/group_model.hpp"

#include "json.hpp"

#include "growth/errors.hpp"

namespace growth {

namespace {

constexpr int kFieldBits = 16;
constexpr std::int64_t kBias = std::int64_t{1} << (kFieldBits - 1);
constexpr std::int64_t kFieldMask = (std::int64_t{1} << kFieldBits) - 1;

}  // namespace

Code GroupModel::encode(const Element& g) const {
  Code code = 0;
  for (std::size_t i = 0; i < kMaxRank; ++i) {
    const std::int64_t biased = std::int64_t{g.c[i]} + kBias;
    if (biased < 0 || biased > kFieldMask) {
      throw InvalidInput(name() + ": coordinate " + std::to_string(g.c[i]) +
                         " outside the codec range");
    }
    code |= static_cast<Code>(biased) << (kFieldBits * i);
  }
  return code;
}

Element GroupModel::decode(Code code) const {
  Element g;
  for (std::size_t i = 0; i < kMaxRank; ++i) {
    const auto field = static_cast<std::int64_t>((code >> (kFieldBits * i)) & kFieldMask);
    g.c[i] = static_cast<std::int32_t>(field - kBias);
  }
  return g;
}

const std::vector<Element>& GroupModel::generating_set(const std::string& label) const {
  auto it = sets_.find(label);
  if (it == sets_.end()) {
    throw InvalidInput(name() + ": unknown generating set '" + label + "'");
  }
  return it->second;
}

void GroupModel::add_generating_set(std::string label, std::vector<Element> elements) {
  sets_.emplace(std::move(label), std::move(elements));
}

std::vector<Element> GroupModel::parse_elements(const std::string& text) const {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidInput(std::string("element list is not valid JSON: ") + e.what());
  }
  if (!doc.is_array()) throw InvalidInput("element list must be a JSON array of tuples");
  std::vector<Element> out;
  for (const auto& tuple : doc) {
    if (!tuple.is_array() || tuple.size() != rank()) {
      throw InvalidInput(name() + ": each element needs exactly " + std::to_string(rank()) +
                         " integer coordinates");
    }
    Element g;
    for (std::size_t i = 0; i < rank(); ++i) {
      if (!tuple[i].is_number_integer()) throw InvalidInput("element coordinates must be integers");
      g.c[i] = tuple[i].get<std::int32_t>();
    }
    out.push_back(g);
  }
  return out;
}

std::string GroupModel::format(const Element& g) const {
  std::string s = "(";
  for (std::size_t i = 0; i < rank(); ++i) {
    if (i) s += ",";
    s += std::to_string(g.c[i]);
  }
  return s + ")";
}

Element make_element(std::initializer_list<std::int32_t> coords) {
  if (coords.size() > kMaxRank) throw InvalidInput("too many coordinates");
  Element g;
  std::size_t i = 0;
  for (auto v : coords) g.c[i++] = v;
  return g;
}

LatticeModel::LatticeModel(std::size_t dimension) : dimension_(dimension) {
  if (dimension < 1 || dimension > kMaxRank) {
    throw InvalidInput("lattice dimension must be in 1.." + std::to_string(kMaxRank));
  }
  std::vector<Element> standard;
  for (std::size_t i = 0; i < dimension; ++i) {
    Element e;
    e.c[i] = 1;
    standard.push_back(e);
    e.c[i] = -1;
    standard.push_back(e);
  }
  auto with_id = standard;
  with_id.insert(with_id.begin(), Element{});
  add_generating_set("standard", standard);
  add_generating_set("standard+id", with_id);
  if (dimension == 2) {
    add_generating_set("hex", {make_element({1, 0}), make_element({-1, 0}), make_element({0, 1}),
                               make_element({0, -1}), make_element({1, 1}),
                               make_element({-1, -1})});
    add_generating_set("tripod", {make_element({0, 0}), make_element({1, 0}),
                                  make_element({0, 1}), make_element({-1, -1})});
  }
}

Element LatticeModel::multiply(const Element& g, const Element& h) const {
  Element out;
  for (std::size_t i = 0; i < kMaxRank; ++i) out.c[i] = g.c[i] + h.c[i];
  return out;
}

Element LatticeModel::invert(const Element& g) const {
  Element out;
  for (std::size_t i = 0; i < kMaxRank; ++i) out.c[i] = -g.c[i];
  return out;
}

HeisenbergModel::HeisenbergModel() {
  std::vector<Element> standard{make_element({1, 0, 0}), make_element({-1, 0, 0}),
                                make_element({0, 1, 0}), make_element({0, -1, 0})};
  auto with_id = standard;
  with_id.insert(with_id.begin(), Element{});
  add_generating_set("standard", standard);
  add_generating_set("standard+id", with_id);
}

Element HeisenbergModel::multiply(const Element& g, const Element& h) const {
  return make_element({g.c[0] + h.c[0], g.c[1] + h.c[1], g.c[2] + h.c[2] + g.c[0] * h.c[1]});
}

Element HeisenbergModel::invert(const Element& g) const {
  return make_element({-g.c[0], -g.c[1], -g.c[2] + g.c[0] * g.c[1]});
}

std::unique_ptr<GroupModel> make_model(const std::string& name) {
  if (name == "heisenberg") return std::make_unique<HeisenbergModel>();
  if (name.size() == 2 && name[0] == 'z' && name[1] >= '1' && name[1] <= '4') {
    return std::make_unique<LatticeModel>(static_cast<std::size_t>(name[1] - '0'));
  }
  throw InvalidInput("unknown group model '" + name + "' (expected z1..z4 or heisenberg)");
}

}  // namespace growth
