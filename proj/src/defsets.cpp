#include "proind/defsets.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <regex>
#include <set>
#include <sstream>

#include "proind/errors.hpp"
#include "proind/text_format.hpp"

namespace proind::defsets {

namespace {

constexpr std::array<std::string_view, 4> kSections = {"universe", "relations", "functions",
                                                       "constants"};

bool is_element_name(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
  });
}

Code power(std::size_t base, std::uint32_t exp) {
  Code r = 1;
  for (std::uint32_t k = 0; k < exp; ++k) r *= base;
  return r;
}

Code encode_in(std::size_t n, const Tuple& t) {
  Code c = 0;
  for (Elem e : t) c = c * n + e;
  return c;
}

Tuple decode_in(std::size_t n, Code c, std::uint32_t arity) {
  Tuple t(arity);
  for (std::uint32_t k = arity; k-- > 0;) {
    t[k] = static_cast<Elem>(c % n);
    c /= n;
  }
  return t;
}

// `name/arity: rest` -> (name, arity, rest).
struct SymbolLine {
  std::string name;
  std::uint32_t arity = 0;
  std::vector<std::string> tokens;
};

SymbolLine parse_symbol_line(const text::Line& line) {
  static const std::regex head(R"(^([A-Za-z_][A-Za-z0-9_']*)\s*/\s*(\d+)\s*:(.*)$)");
  static const std::regex glue(R"(\s*(\(|\)|,|->)\s*)");
  std::smatch m;
  if (!std::regex_match(line.text, m, head)) {
    throw ParseError(line.number, "expected 'name/arity: ...'");
  }
  SymbolLine out;
  out.name = m[1];
  out.arity = static_cast<std::uint32_t>(std::stoul(m[2]));
  std::string rest = std::regex_replace(std::string(m[3]), glue, "$1");
  // Re-separate adjacent tuples "(a,b)(c,d)".
  std::string spaced;
  for (std::size_t k = 0; k < rest.size(); ++k) {
    spaced += rest[k];
    if (rest[k] == ')' && k + 1 < rest.size() && rest[k + 1] == '(') spaced += ' ';
  }
  out.tokens = text::split_ws(spaced);
  return out;
}

Tuple parse_tuple(const FinStructure& m, std::string_view token, std::uint32_t arity, int line) {
  std::string_view body = token;
  bool parens = body.size() >= 2 && body.front() == '(' && body.back() == ')';
  if (parens) body = body.substr(1, body.size() - 2);
  std::vector<std::string> parts;
  if (!body.empty()) parts = text::split_on(body, ",");
  if (!parens && arity != 1) throw ParseError(line, "expected a parenthesized tuple, got '" + std::string(token) + "'");
  if (parts.size() != arity) {
    throw ParseError(line, "tuple '" + std::string(token) + "' does not have arity " + std::to_string(arity));
  }
  Tuple t;
  for (const std::string& p : parts) {
    auto e = m.find_element(p);
    if (!e) throw ParseError(line, "unknown element '" + p + "'");
    t.push_back(*e);
  }
  return t;
}

// Checks that phi (partial, kUnset entries unassigned) is compatible with
// every symbol on tuples made of assigned elements that involve `fresh`.
constexpr Elem kUnset = static_cast<Elem>(-1);

bool tuples_consistent(const FinStructure& from, const FinStructure& to, const Perm& phi,
                       const std::vector<Elem>& assigned, Elem fresh) {
  const std::size_t n = from.size();
  auto check_all = [&](std::uint32_t arity, bool only_fresh, auto&& visit) {
    Tuple t(arity, 0);
    std::vector<std::size_t> idx(arity, 0);
    if (arity == 0) return visit(t);
    while (true) {
      bool involves = false;
      for (std::uint32_t k = 0; k < arity; ++k) {
        t[k] = assigned[idx[k]];
        involves |= t[k] == fresh;
      }
      if ((involves || !only_fresh) && !visit(t)) return false;
      std::uint32_t k = 0;
      while (k < arity && ++idx[k] == assigned.size()) idx[k++] = 0;
      if (k == arity) return true;
    }
  };
  for (std::size_t r = 0; r < from.relations.size(); ++r) {
    const auto& rf = from.relations[r];
    const auto& rt = to.relations[r];
    bool ok = check_all(rf.arity, true, [&](const Tuple& t) {
      Tuple image(t.size());
      for (std::size_t k = 0; k < t.size(); ++k) image[k] = phi[t[k]];
      return std::binary_search(rf.tuples.begin(), rf.tuples.end(), t) ==
             std::binary_search(rt.tuples.begin(), rt.tuples.end(), image);
    });
    if (!ok) return false;
  }
  for (std::size_t f = 0; f < from.functions.size(); ++f) {
    const auto& ff = from.functions[f];
    const auto& ft = to.functions[f];
    // A function value may be assigned after its arguments, so every
    // assigned argument tuple is rechecked.
    bool ok = check_all(ff.arity, false, [&](const Tuple& t) {
      Tuple image(t.size());
      for (std::size_t k = 0; k < t.size(); ++k) image[k] = phi[t[k]];
      Elem value = ff.table[encode_in(n, t)];
      Elem target = ft.table[encode_in(n, image)];
      if (phi[value] != kUnset) return phi[value] == target;
      // The image is taken by another element: phi could not extend.
      for (Elem a : assigned) {
        if (phi[a] == target) return false;
      }
      return true;
    });
    if (!ok) return false;
  }
  for (std::size_t c = 0; c < from.constants.size(); ++c) {
    if (from.constants[c].value == fresh && phi[fresh] != to.constants[c].value) return false;
  }
  return true;
}

Perm compose_perm(const Perm& a, const Perm& b) {
  Perm r(b.size());
  for (std::size_t k = 0; k < b.size(); ++k) r[k] = a[b[k]];
  return r;
}

std::vector<Perm> greedy_generators(const std::vector<Perm>& elements) {
  std::vector<Perm> gens;
  if (elements.empty()) return gens;
  std::set<Perm> generated{elements.front()};
  for (const Perm& g : elements) {
    if (generated.count(g)) continue;
    gens.push_back(g);
    // Closure of the generated set under the new generator list.
    std::vector<Perm> frontier(generated.begin(), generated.end());
    while (!frontier.empty()) {
      std::vector<Perm> next;
      for (const Perm& x : frontier) {
        for (const Perm& s : gens) {
          Perm y = compose_perm(s, x);
          if (generated.insert(y).second) next.push_back(y);
        }
      }
      frontier = std::move(next);
    }
  }
  return gens;
}

bool is_automorphism(const FinStructure& m, const Perm& p) {
  if (p.size() != m.size()) return false;
  std::vector<bool> seen(m.size(), false);
  for (Elem e : p) {
    if (e >= m.size() || seen[e]) return false;
    seen[e] = true;
  }
  std::vector<Elem> all(m.size());
  std::iota(all.begin(), all.end(), 0);
  for (Elem x = 0; x < m.size(); ++x) {
    if (!tuples_consistent(m, m, p, all, x)) return false;
  }
  return true;
}

}  // namespace

// ---------------------------------------------------------------------------

std::optional<Elem> FinStructure::find_element(std::string_view name) const {
  for (Elem e = 0; e < universe.size(); ++e) {
    if (universe[e] == name) return e;
  }
  return std::nullopt;
}

std::uint32_t FinStructure::signature_arity() const {
  std::uint32_t a = constants.empty() ? 0 : 1;
  for (const auto& r : relations) a = std::max(a, r.arity);
  for (const auto& f : functions) a = std::max(a, f.arity + 1);
  return a;
}

bool FinStructure::same_signature(const FinStructure& other) const {
  if (relations.size() != other.relations.size() || functions.size() != other.functions.size() ||
      constants.size() != other.constants.size()) {
    return false;
  }
  for (std::size_t k = 0; k < relations.size(); ++k) {
    if (relations[k].name != other.relations[k].name || relations[k].arity != other.relations[k].arity) {
      return false;
    }
  }
  for (std::size_t k = 0; k < functions.size(); ++k) {
    if (functions[k].name != other.functions[k].name || functions[k].arity != other.functions[k].arity) {
      return false;
    }
  }
  for (std::size_t k = 0; k < constants.size(); ++k) {
    if (constants[k].name != other.constants[k].name) return false;
  }
  return true;
}

FinStructure parse_structure(std::string_view input) {
  auto sections = text::split_sections(input, kSections);
  FinStructure m;
  for (const text::Line& line : sections["universe"]) {
    for (const std::string& name : text::split_ws(line.text)) {
      if (!is_element_name(name)) throw ParseError(line.number, "bad element name '" + name + "'");
      if (m.find_element(name)) throw ParseError(line.number, "duplicate element '" + name + "'");
      m.universe.push_back(name);
    }
  }
  const std::size_t n = m.size();
  std::map<std::string, std::size_t> symbols;
  auto claim = [&](const SymbolLine& s, int line, std::size_t kind) {
    auto it = symbols.find(s.name);
    if (it != symbols.end() && it->second != kind) {
      throw ParseError(line, "symbol '" + s.name + "' declared twice with different kinds");
    }
    symbols[s.name] = kind;
  };

  std::map<std::string, FinStructure::Relation> relations;
  for (const text::Line& line : sections["relations"]) {
    SymbolLine s = parse_symbol_line(line);
    claim(s, line.number, 0);
    auto& r = relations[s.name];
    if (r.name.empty()) {
      r.name = s.name;
      r.arity = s.arity;
    } else if (r.arity != s.arity) {
      throw ParseError(line.number, "relation '" + s.name + "' used with two arities");
    }
    for (const std::string& tok : s.tokens) r.tuples.push_back(parse_tuple(m, tok, s.arity, line.number));
  }
  for (auto& [name, r] : relations) {
    std::sort(r.tuples.begin(), r.tuples.end());
    r.tuples.erase(std::unique(r.tuples.begin(), r.tuples.end()), r.tuples.end());
    m.relations.push_back(std::move(r));
  }

  std::map<std::string, std::pair<FinStructure::Function, std::vector<bool>>> functions;
  std::map<std::string, int> first_line;
  for (const text::Line& line : sections["functions"]) {
    SymbolLine s = parse_symbol_line(line);
    claim(s, line.number, 1);
    auto& [f, defined] = functions[s.name];
    if (f.name.empty()) {
      f.name = s.name;
      f.arity = s.arity;
      f.table.assign(power(n, s.arity), 0);
      defined.assign(f.table.size(), false);
      first_line[s.name] = line.number;
    } else if (f.arity != s.arity) {
      throw ParseError(line.number, "function '" + s.name + "' used with two arities");
    }
    for (const std::string& tok : s.tokens) {
      auto arrow = tok.find("->");
      if (arrow == std::string::npos) throw ParseError(line.number, "expected 'args->value', got '" + tok + "'");
      Tuple args = parse_tuple(m, tok.substr(0, arrow), s.arity, line.number);
      auto value = m.find_element(tok.substr(arrow + 2));
      if (!value) throw ParseError(line.number, "unknown element '" + tok.substr(arrow + 2) + "'");
      Code c = encode_in(n, args);
      if (defined[c] && f.table[c] != *value) {
        throw ParseError(line.number, "function '" + s.name + "' given two values at '" + tok.substr(0, arrow) + "'");
      }
      f.table[c] = *value;
      defined[c] = true;
    }
  }
  for (auto& [name, entry] : functions) {
    auto& [f, defined] = entry;
    if (std::find(defined.begin(), defined.end(), false) != defined.end()) {
      throw ParseError(first_line[name], "function '" + name + "' is not total");
    }
    m.functions.push_back(std::move(f));
  }

  std::map<std::string, FinStructure::Constant> constants;
  for (const text::Line& line : sections["constants"]) {
    auto parts = text::split_on(line.text, "=");
    if (parts.size() != 2 || !is_element_name(parts[0])) throw ParseError(line.number, "expected 'c = element'");
    auto value = m.find_element(parts[1]);
    if (!value) throw ParseError(line.number, "unknown element '" + parts[1] + "'");
    SymbolLine s{parts[0], 0, {}};
    claim(s, line.number, 2);
    if (constants.count(parts[0])) throw ParseError(line.number, "constant '" + parts[0] + "' given twice");
    constants[parts[0]] = {parts[0], *value};
  }
  for (auto& [name, c] : constants) m.constants.push_back(c);
  return m;
}

std::string format_structure(const FinStructure& m) {
  std::ostringstream os;
  os << "universe:";
  for (const auto& e : m.universe) os << " " << e;
  os << "\n";
  auto tuple_text = [&](const Tuple& t) {
    std::string s = "(";
    for (std::size_t k = 0; k < t.size(); ++k) s += (k ? "," : "") + m.universe[t[k]];
    return s + ")";
  };
  if (!m.relations.empty()) {
    os << "relations:\n";
    for (const auto& r : m.relations) {
      os << "  " << r.name << "/" << r.arity << ":";
      for (const auto& t : r.tuples) os << " " << tuple_text(t);
      os << "\n";
    }
  }
  if (!m.functions.empty()) {
    os << "functions:\n";
    for (const auto& f : m.functions) {
      os << "  " << f.name << "/" << f.arity << ":";
      for (Code c = 0; c < f.table.size(); ++c) {
        os << " " << tuple_text(decode_in(m.size(), c, f.arity)) << "->" << m.universe[f.table[c]];
      }
      os << "\n";
    }
  }
  if (!m.constants.empty()) {
    os << "constants:\n";
    for (const auto& c : m.constants) os << "  " << c.name << " = " << m.universe[c.value] << "\n";
  }
  return os.str();
}

std::vector<std::string> bundled_structure_names() { return {"S1", "S2", "S3"}; }

std::string bundled_structure_text(std::string_view name) {
  if (name == "S1") return "universe: a b c\n";
  if (name == "S2") return "universe: a b c\nrelations:\n  E/2: (a,b) (b,c) (c,a)\n";
  if (name == "S3") return "universe: a b\nrelations:\n  P/1: (a)\n";
  fail(ErrorKind::kInvalidArgument, "no bundled structure named '" + std::string(name) + "'");
}

FinStructure bundled_structure(std::string_view name) {
  return parse_structure(bundled_structure_text(name));
}

std::vector<Perm> isomorphisms(const FinStructure& from, const FinStructure& to) {
  std::vector<Perm> out;
  if (from.size() != to.size() || !from.same_signature(to)) return out;
  for (std::size_t r = 0; r < from.relations.size(); ++r) {
    if (from.relations[r].tuples.size() != to.relations[r].tuples.size()) return out;
  }
  const std::size_t n = from.size();
  Perm phi(n, kUnset);
  std::vector<bool> used(n, false);
  std::vector<Elem> assigned;
  auto search = [&](auto&& self, Elem x) -> void {
    if (x == n) {
      out.push_back(phi);
      return;
    }
    for (Elem y = 0; y < n; ++y) {
      if (used[y]) continue;
      phi[x] = y;
      used[y] = true;
      assigned.push_back(x);
      if (tuples_consistent(from, to, phi, assigned, x)) self(self, x + 1);
      assigned.pop_back();
      used[y] = false;
      phi[x] = kUnset;
    }
  };
  search(search, 0);
  return out;
}

AutGroup automorphism_group(const FinStructure& m) {
  AutGroup g;
  g.elements = isomorphisms(m, m);
  g.generators = greedy_generators(g.elements);
  return g;
}

std::vector<std::vector<std::uint32_t>> equivariant_maps(
    const std::vector<std::vector<std::uint32_t>>& act_source,
    const std::vector<std::vector<std::uint32_t>>& act_target, std::uint64_t cap) {
  const std::size_t groups = act_source.size();
  if (groups == 0 || act_target.size() != groups) {
    fail(ErrorKind::kInvalidArgument, "equivariant_maps needs the same nonempty group on both sides");
  }
  const std::size_t ns = act_source[0].size();
  const std::size_t nt = act_target[0].size();
  std::vector<bool> seen(ns, false);
  std::vector<std::uint32_t> reps;
  std::vector<std::vector<std::uint32_t>> candidates;
  std::uint64_t total = 1;
  for (std::uint32_t x = 0; x < ns; ++x) {
    if (seen[x]) continue;
    for (std::size_t g = 0; g < groups; ++g) seen[act_source[g][x]] = true;
    reps.push_back(x);
    std::vector<std::uint32_t> ok;
    for (std::uint32_t y = 0; y < nt; ++y) {
      bool fixed = true;
      for (std::size_t g = 0; g < groups && fixed; ++g) {
        if (act_source[g][x] == x) fixed = act_target[g][y] == y;
      }
      if (fixed) ok.push_back(y);
    }
    total = ok.empty() ? 0 : (total > cap ? total : total * ok.size());
    candidates.push_back(std::move(ok));
  }
  if (total > cap) {
    fail(ErrorKind::kSizeCapExceeded,
         "equivariant map enumeration needs more than " + std::to_string(cap) + " candidates");
  }
  std::vector<std::vector<std::uint32_t>> out;
  if (total == 0) return out;
  std::vector<std::size_t> choice(reps.size(), 0);
  while (true) {
    std::vector<std::uint32_t> table(ns, 0);
    for (std::size_t r = 0; r < reps.size(); ++r) {
      std::uint32_t y = candidates[r][choice[r]];
      for (std::size_t g = 0; g < groups; ++g) table[act_source[g][reps[r]]] = act_target[g][y];
    }
    out.push_back(std::move(table));
    std::size_t r = 0;
    while (r < reps.size() && ++choice[r] == candidates[r].size()) choice[r++] = 0;
    if (r == reps.size()) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------

bool DefSet::contains(Code c) const { return std::binary_search(codes.begin(), codes.end(), c); }

std::uint32_t DefSet::position(Code c) const {
  auto it = std::lower_bound(codes.begin(), codes.end(), c);
  if (it == codes.end() || *it != c) {
    fail(ErrorKind::kInvalidArgument, "tuple code " + std::to_string(c) + " is not in the set");
  }
  return static_cast<std::uint32_t>(it - codes.begin());
}

Model::Model(FinStructure structure, Caps caps)
    : structure_(std::move(structure)), caps_(caps), aut_(automorphism_group(structure_)) {}

Model::Model(FinStructure structure, Caps caps, AutGroup aut)
    : structure_(std::move(structure)), caps_(caps), aut_(std::move(aut)) {
  if (aut_.elements.empty()) fail(ErrorKind::kInvalidArgument, "automorphism group is empty");
  for (const Perm& p : aut_.elements) {
    if (!is_automorphism(structure_, p)) {
      fail(ErrorKind::kInvalidArgument, "supplied permutation is not an automorphism");
    }
  }
  std::set<Perm> elements(aut_.elements.begin(), aut_.elements.end());
  for (const Perm& a : aut_.elements) {
    for (const Perm& b : aut_.generators) {
      if (!elements.count(compose_perm(a, b))) {
        fail(ErrorKind::kInvalidArgument, "supplied automorphisms are not closed under composition");
      }
    }
  }
}

std::vector<OrbitTable> Model::computed_orbits() const {
  std::lock_guard lock(mutex_);
  std::vector<OrbitTable> out;
  for (const auto& [arity, data] : orbit_cache_) out.push_back({arity, data->orbits});
  return out;
}

void Model::seed_orbits(const OrbitTable& table) const {
  if (table.arity > caps_.max_arity) return;
  const Code total = tuple_count(table.arity);
  auto data = std::make_unique<OrbitData>();
  data->index.assign(total, static_cast<std::uint32_t>(-1));
  Code covered = 0;
  for (std::uint32_t k = 0; k < table.orbits.size(); ++k) {
    const auto& orbit = table.orbits[k];
    if (orbit.empty()) fail(ErrorKind::kInvalidArgument, "seeded orbit table has an empty orbit");
    for (Code c : orbit) {
      if (c >= total || data->index[c] != static_cast<std::uint32_t>(-1)) {
        fail(ErrorKind::kInvalidArgument, "seeded orbit table is not a partition");
      }
      data->index[c] = k;
      ++covered;
    }
    for (const Perm& g : aut_.generators) {
      if (!std::binary_search(orbit.begin(), orbit.end(), act(g, orbit.front(), table.arity))) {
        fail(ErrorKind::kInvalidArgument, "seeded orbit is not closed under the group");
      }
    }
  }
  if (covered != total) fail(ErrorKind::kInvalidArgument, "seeded orbit table does not cover all tuples");
  data->orbits = table.orbits;
  std::lock_guard lock(mutex_);
  orbit_cache_[table.arity] = std::move(data);
}

Code Model::tuple_count(std::uint32_t arity) const { return power(structure_.size(), arity); }

Code Model::encode(const Tuple& t) const { return encode_in(structure_.size(), t); }

Tuple Model::decode(Code c, std::uint32_t arity) const {
  return decode_in(structure_.size(), c, arity);
}

Code Model::act(const Perm& g, Code c, std::uint32_t arity) const {
  const std::size_t n = structure_.size();
  Code out = 0;
  Code scale = 1;
  for (std::uint32_t k = 0; k < arity; ++k) {
    out += g[c % n] * scale;
    c /= n;
    scale *= n;
  }
  return out;
}

std::string Model::format_tuple(Code c, std::uint32_t arity) const {
  Tuple t = decode(c, arity);
  std::string s = "(";
  for (std::size_t k = 0; k < t.size(); ++k) s += (k ? "," : "") + structure_.universe[t[k]];
  return s + ")";
}

std::string Model::format_set(const DefSet& s) const {
  std::string out = "{";
  for (std::size_t k = 0; k < s.codes.size(); ++k) {
    out += (k ? " " : "") + format_tuple(s.codes[k], s.arity);
  }
  return out + "}";
}

const Model::OrbitData& Model::orbit_data(std::uint32_t arity) const {
  if (arity > caps_.max_arity) {
    fail(ErrorKind::kArityCapExceeded,
         "arity " + std::to_string(arity) + " exceeds the cap " + std::to_string(caps_.max_arity));
  }
  std::lock_guard lock(mutex_);
  auto& slot = orbit_cache_[arity];
  if (slot) return *slot;
  auto data = std::make_unique<OrbitData>();
  const Code total = tuple_count(arity);
  data->index.assign(total, static_cast<std::uint32_t>(-1));
  for (Code c = 0; c < total; ++c) {
    if (data->index[c] != static_cast<std::uint32_t>(-1)) continue;
    auto id = static_cast<std::uint32_t>(data->orbits.size());
    std::vector<Code> orbit{c};
    data->index[c] = id;
    for (std::size_t k = 0; k < orbit.size(); ++k) {
      for (const Perm& g : aut_.generators) {
        Code d = act(g, orbit[k], arity);
        if (data->index[d] == static_cast<std::uint32_t>(-1)) {
          data->index[d] = id;
          orbit.push_back(d);
        }
      }
    }
    std::sort(orbit.begin(), orbit.end());
    data->orbits.push_back(std::move(orbit));
  }
  slot = std::move(data);
  return *slot;
}

const std::vector<std::vector<Code>>& Model::orbits(std::uint32_t arity) const {
  return orbit_data(arity).orbits;
}

const std::vector<std::uint32_t>& Model::orbit_index(std::uint32_t arity) const {
  return orbit_data(arity).index;
}

std::vector<DefSet> Model::enumerate(std::uint32_t arity) const {
  const std::size_t k = orbits(arity).size();
  if (k > 20) {
    fail(ErrorKind::kSizeCapExceeded,
         std::to_string(k) + " orbits at arity " + std::to_string(arity) + " is too many to enumerate");
  }
  std::vector<DefSet> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) out.push_back(from_mask(arity, mask));
  return out;
}

DefSet Model::from_mask(std::uint32_t arity, std::uint64_t mask) const {
  const auto& orb = orbits(arity);
  DefSet s{arity, {}};
  for (std::size_t k = 0; k < orb.size() && k < 64; ++k) {
    if (mask >> k & 1) s.codes.insert(s.codes.end(), orb[k].begin(), orb[k].end());
  }
  std::sort(s.codes.begin(), s.codes.end());
  return s;
}

std::uint64_t Model::mask_of(const DefSet& s) const {
  const auto& orb = orbits(s.arity);
  if (orb.size() > 64) fail(ErrorKind::kSizeCapExceeded, "more than 64 orbits; no mask id");
  const auto& index = orbit_index(s.arity);
  std::uint64_t mask = 0;
  for (Code c : s.codes) mask |= std::uint64_t{1} << index[c];
  return mask;
}

std::string Model::set_id(const DefSet& s) const {
  return "d" + std::to_string(s.arity) + "_" + std::to_string(mask_of(s));
}

DefSet Model::parse_set_id(std::string_view id) const {
  static const std::regex pattern(R"(d(\d+)_(\d+))");
  std::match_results<std::string_view::const_iterator> m;
  if (!std::regex_match(id.begin(), id.end(), m, pattern) || m[1].length() > 3 || m[2].length() > 20) {
    fail(ErrorKind::kUnknownSetId, "'" + std::string(id) + "' is not a set id");
  }
  auto arity = static_cast<std::uint32_t>(std::stoul(m[1]));
  if (arity > caps_.max_arity) fail(ErrorKind::kUnknownSetId, "'" + std::string(id) + "' exceeds the arity cap");
  std::uint64_t mask = std::stoull(m[2]);
  const std::size_t k = orbits(arity).size();
  if (k < 64 && mask >= (std::uint64_t{1} << k)) {
    fail(ErrorKind::kUnknownSetId, "'" + std::string(id) + "' names orbits that do not exist");
  }
  return from_mask(arity, mask);
}

DefSet Model::universe_set(std::uint32_t arity) const {
  DefSet s{arity, std::vector<Code>(tuple_count(arity))};
  std::iota(s.codes.begin(), s.codes.end(), Code{0});
  return s;
}

bool Model::is_invariant(const DefSet& s) const {
  if (s.arity > caps_.max_arity) return false;
  for (Code c : s.codes) {
    if (c >= tuple_count(s.arity)) return false;
    for (const Perm& g : aut_.generators) {
      if (!s.contains(act(g, c, s.arity))) return false;
    }
  }
  return true;
}

DefSet Model::make_set(std::uint32_t arity, std::vector<Code> codes) const {
  std::sort(codes.begin(), codes.end());
  codes.erase(std::unique(codes.begin(), codes.end()), codes.end());
  DefSet s{arity, std::move(codes)};
  if (arity > caps_.max_arity) {
    fail(ErrorKind::kArityCapExceeded, "arity " + std::to_string(arity) + " exceeds the cap");
  }
  if (!is_invariant(s)) fail(ErrorKind::kNotDefinable, format_set(s) + " is not invariant");
  return s;
}

DefSet Model::orbit_of(Code c, std::uint32_t arity) const {
  return DefSet{arity, orbits(arity)[orbit_index(arity)[c]]};
}

bool Model::equivariant(const std::vector<std::uint32_t>& table, const DefSet& x,
                        const DefSet& y) const {
  for (const Perm& g : aut_.elements) {
    for (std::size_t p = 0; p < x.size(); ++p) {
      Code gx = act(g, x.codes[p], x.arity);
      if (!x.contains(gx)) return false;
      Code lhs = y.codes[table[x.position(gx)]];
      Code rhs = act(g, y.codes[table[p]], y.arity);
      if (lhs != rhs) return false;
    }
  }
  return true;
}

bool Model::graph_invariant(const std::vector<std::uint32_t>& table, const DefSet& x,
                            const DefSet& y) const {
  std::vector<Code> graph;
  const std::uint32_t arity = x.arity + y.arity;
  for (std::size_t p = 0; p < x.size(); ++p) {
    graph.push_back(concat(x.codes[p], x.arity, y.codes[table[p]], y.arity));
  }
  std::sort(graph.begin(), graph.end());
  for (const Perm& g : aut_.elements) {
    for (Code c : graph) {
      if (!std::binary_search(graph.begin(), graph.end(), act(g, c, arity))) return false;
    }
  }
  return true;
}

bool Model::is_definable_map(const std::vector<std::uint32_t>& table, const DefSet& x,
                             const DefSet& y) const {
  if (table.size() != x.size()) return false;
  for (auto v : table) {
    if (v >= y.size()) return false;
  }
  bool a = equivariant(table, x, y);
  bool b = graph_invariant(table, x, y);
  if (a != b) {
    fail(ErrorKind::kInternalConsistency, "equivariance and graph invariance disagree");
  }
  return a;
}

DefMap Model::make_map(const DefSet& x, const DefSet& y, std::vector<std::uint32_t> table) const {
  if (!is_definable_map(table, x, y)) {
    fail(ErrorKind::kNotDefinable, "map " + format_set(x) + " -> " + format_set(y) + " is not definable");
  }
  return DefMap{x, y, std::move(table)};
}

std::vector<HomTable> Model::computed_homs() const {
  std::lock_guard lock(mutex_);
  std::vector<HomTable> out;
  for (const auto& [key, maps] : hom_cache_) {
    HomTable t{key.first, key.second, {}};
    for (const auto& f : *maps) t.tables.push_back(f.table);
    out.push_back(std::move(t));
  }
  return out;
}

void Model::seed_hom(const HomTable& table) const {
  if (!is_invariant(table.from) || !is_invariant(table.to)) {
    fail(ErrorKind::kInvalidArgument, "seeded hom table names a set that is not definable");
  }
  if (!std::is_sorted(table.tables.begin(), table.tables.end()) ||
      std::adjacent_find(table.tables.begin(), table.tables.end()) != table.tables.end()) {
    fail(ErrorKind::kInvalidArgument, "seeded hom table is not sorted");
  }
  auto maps = std::make_unique<std::vector<DefMap>>();
  for (const auto& t : table.tables) {
    if (!is_definable_map(t, table.from, table.to)) {
      fail(ErrorKind::kInvalidArgument, "seeded hom table holds a map that is not definable");
    }
    maps->push_back(DefMap{table.from, table.to, t});
  }
  std::lock_guard lock(mutex_);
  auto& slot = hom_cache_[{table.from, table.to}];
  if (!slot) slot = std::move(maps);
}

const std::vector<DefMap>& Model::hom(const DefSet& x, const DefSet& y) const {
  {
    std::lock_guard lock(mutex_);
    auto it = hom_cache_.find({x, y});
    if (it != hom_cache_.end()) return *it->second;
  }
  auto action = [&](const DefSet& s) {
    std::vector<std::vector<std::uint32_t>> act_table;
    for (const Perm& g : aut_.elements) {
      std::vector<std::uint32_t> row(s.size());
      for (std::size_t p = 0; p < s.size(); ++p) row[p] = s.position(act(g, s.codes[p], s.arity));
      act_table.push_back(std::move(row));
    }
    return act_table;
  };
  auto maps = std::make_unique<std::vector<DefMap>>();
  for (auto& table : equivariant_maps(action(x), action(y), caps_.max_hom_candidates)) {
    maps->push_back(DefMap{x, y, std::move(table)});
  }
  std::lock_guard lock(mutex_);
  auto& slot = hom_cache_[{x, y}];
  if (!slot) slot = std::move(maps);
  return *slot;
}

DefMap Model::identity(const DefSet& x) const {
  DefMap f{x, x, std::vector<std::uint32_t>(x.size())};
  std::iota(f.table.begin(), f.table.end(), 0u);
  return f;
}

DefMap Model::compose(const DefMap& g, const DefMap& f) const {
  if (f.cod != g.dom) fail(ErrorKind::kInvalidArgument, "composing maps whose ends do not meet");
  DefMap h{f.dom, g.cod, std::vector<std::uint32_t>(f.table.size())};
  for (std::size_t p = 0; p < f.table.size(); ++p) h.table[p] = g.table[f.table[p]];
  return h;
}

DefMap Model::inclusion(const DefSet& x, const DefSet& y) const {
  if (x.arity != y.arity) fail(ErrorKind::kInvalidArgument, "inclusion between different arities");
  DefMap f{x, y, std::vector<std::uint32_t>(x.size())};
  for (std::size_t p = 0; p < x.size(); ++p) {
    if (!y.contains(x.codes[p])) {
      fail(ErrorKind::kInvalidArgument, format_set(x) + " is not contained in " + format_set(y));
    }
    f.table[p] = y.position(x.codes[p]);
  }
  return f;
}

DefSet Model::image(const DefMap& f) const {
  DefSet s{f.cod.arity, {}};
  for (auto v : f.table) s.codes.push_back(f.cod.codes[v]);
  std::sort(s.codes.begin(), s.codes.end());
  s.codes.erase(std::unique(s.codes.begin(), s.codes.end()), s.codes.end());
  return s;
}

DefSet Model::kernel_pair(const DefMap& f) const { return fiber_product(f, f).set; }

bool Model::injective(const DefMap& f) const { return image(f).size() == f.dom.size(); }

bool Model::surjective(const DefMap& f) const { return image(f).size() == f.cod.size(); }

Code Model::concat(Code a, std::uint32_t, Code b, std::uint32_t arity_b) const {
  return a * tuple_count(arity_b) + b;
}

Code Model::slice_code(Code c, std::uint32_t arity, std::uint32_t from, std::uint32_t len) const {
  return (c / tuple_count(arity - from - len)) % tuple_count(len);
}

Projections Model::fiber_product(const DefMap& p, const DefMap& q) const {
  if (p.cod != q.cod) fail(ErrorKind::kInvalidArgument, "fiber product over different bases");
  const DefSet& x = p.dom;
  const DefSet& y = q.dom;
  Projections out;
  out.set.arity = x.arity + y.arity;
  out.first = DefMap{{}, x, {}};
  out.second = DefMap{{}, y, {}};
  for (std::uint32_t a = 0; a < x.size(); ++a) {
    for (std::uint32_t b = 0; b < y.size(); ++b) {
      if (p.table[a] != q.table[b]) continue;
      out.set.codes.push_back(concat(x.codes[a], x.arity, y.codes[b], y.arity));
      out.first.table.push_back(a);
      out.second.table.push_back(b);
    }
  }
  out.first.dom = out.set;
  out.second.dom = out.set;
  return out;
}

Projections Model::product(const DefSet& x, const DefSet& y) const {
  DefSet point = universe_set(0);
  DefMap to_x{x, point, std::vector<std::uint32_t>(x.size(), 0)};
  DefMap to_y{y, point, std::vector<std::uint32_t>(y.size(), 0)};
  return fiber_product(to_x, to_y);
}

Projections Model::graph(const DefMap& f) const { return fiber_product(f, identity(f.cod)); }

}  // namespace proind::defsets
