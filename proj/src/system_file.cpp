#include "proind/system_file.hpp"

#include <array>
#include <map>
#include <optional>

#include "proind/errors.hpp"
#include "proind/text_format.hpp"

namespace proind::points {

namespace {

Code parse_code(const Model& m, std::string_view token, std::uint32_t arity, int line) {
  std::string_view body = token;
  const bool parens = body.size() >= 2 && body.front() == '(' && body.back() == ')';
  if (parens) body = body.substr(1, body.size() - 2);
  auto parts = text::split_on(body, ",");
  if (parts.size() != arity) {
    throw ParseError(line, "tuple '" + std::string(token) + "' does not have arity " + std::to_string(arity));
  }
  defsets::Tuple t;
  for (const auto& p : parts) {
    auto e = m.structure().find_element(p);
    if (!e) throw ParseError(line, "unknown element '" + p + "'");
    t.push_back(*e);
  }
  return m.encode(t);
}

DefMap parse_map(const Model& m, const DefSet& from, const DefSet& to, const text::Line& line, std::string_view body) {
  if (text::trim(body) == "inclusion") {
    for (Code c : from.codes) {
      if (!to.contains(c)) throw ParseError(line.number, "source is not contained in the target");
    }
    return m.inclusion(from, to);
  }
  constexpr std::uint32_t kUnset = static_cast<std::uint32_t>(-1);
  std::vector<std::uint32_t> table(from.size(), kUnset);
  for (const auto& entry : text::split_on(body, ";")) {
    auto arrow = entry.find("->");
    if (arrow == std::string::npos) throw ParseError(line.number, "expected 'x -> y' in '" + entry + "'");
    Code x = parse_code(m, text::trim(std::string_view(entry).substr(0, arrow)), from.arity, line.number);
    Code y = parse_code(m, text::trim(std::string_view(entry).substr(arrow + 2)), to.arity, line.number);
    if (!from.contains(x)) throw ParseError(line.number, m.format_tuple(x, from.arity) + " is not in the source set");
    if (!to.contains(y)) throw ParseError(line.number, m.format_tuple(y, to.arity) + " is not in the target set");
    table[from.position(x)] = to.position(y);
  }
  for (std::size_t p = 0; p < table.size(); ++p) {
    if (table[p] == kUnset) {
      throw ParseError(line.number, "no image for " + m.format_tuple(from.codes[p], from.arity));
    }
  }
  return m.make_map(from, to, std::move(table));
}

}  // namespace

SystemFile parse_system(const DefBase& base, std::string_view input) {
  static constexpr std::array<std::string_view, 6> kSections{"kind", "objects", "morphisms", "compose", "sets", "maps"};
  const Model& m = base.model();
  auto sections = text::split_sections(input, kSections);
  SystemFile out;
  for (const auto& line : sections["kind"]) {
    if (line.text == "ind") {
      out.kind = SystemKind::kInd;
    } else if (line.text == "pro") {
      out.kind = SystemKind::kPro;
    } else {
      throw ParseError(line.number, "kind must be ind or pro");
    }
  }
  auto index = std::make_shared<const fincat::FinCategory>(fincat::parse_category_sections(sections));
  const auto& c = *index;
  const bool covariant = out.kind == SystemKind::kInd;

  std::vector<std::optional<DefSet>> sets(c.object_count());
  for (const auto& line : sections["sets"]) {
    auto colon = line.text.find(':');
    if (colon == std::string::npos) throw ParseError(line.number, "expected 'obj: d<arity>_<mask>'");
    std::string obj = text::trim(std::string_view(line.text).substr(0, colon));
    auto x = c.find_object(obj);
    if (!x) throw ParseError(line.number, "unknown object '" + obj + "'");
    if (sets[*x]) throw ParseError(line.number, "set of '" + obj + "' given twice");
    try {
      sets[*x] = m.parse_set_id(text::trim(std::string_view(line.text).substr(colon + 1)));
    } catch (const Error& e) {
      throw Error(e.kind(), "line " + std::to_string(line.number) + ": " + e.message());
    }
  }
  std::vector<DefSet> objects;
  for (ObjId x = 0; x < c.object_count(); ++x) {
    if (!sets[x]) fail(ErrorKind::kParse, "no set given for object '" + c.object_name(x) + "'");
    objects.push_back(*sets[x]);
  }

  std::vector<std::optional<DefMap>> maps(c.morphism_count());
  for (const auto& line : sections["maps"]) {
    auto colon = line.text.find(':');
    if (colon == std::string::npos) throw ParseError(line.number, "expected 't: inclusion' or 't: x -> y; ...'");
    std::string name = text::trim(std::string_view(line.text).substr(0, colon));
    auto t = c.find_morphism(name);
    if (!t) throw ParseError(line.number, "unknown morphism '" + name + "'");
    if (maps[*t]) throw ParseError(line.number, "map of '" + name + "' given twice");
    const DefSet& from = objects[covariant ? c.dom(*t) : c.cod(*t)];
    const DefSet& to = objects[covariant ? c.cod(*t) : c.dom(*t)];
    try {
      maps[*t] = parse_map(m, from, to, line, std::string_view(line.text).substr(colon + 1));
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw Error(e.kind(), "line " + std::to_string(line.number) + ": " + e.message());
    }
  }
  std::vector<DefMap> table;
  for (MorphId t = 0; t < c.morphism_count(); ++t) {
    if (!maps[t] && c.is_identity(t)) maps[t] = m.identity(objects[c.dom(t)]);
    if (!maps[t]) fail(ErrorKind::kParse, "no map given for morphism '" + c.morphism_name(t) + "'");
    table.push_back(*maps[t]);
  }
  if (covariant) {
    out.ind = indpro::make_ind(base, index, std::move(objects), std::move(table));
  } else {
    out.pro = indpro::make_pro(base, index, std::move(objects), std::move(table));
  }
  return out;
}

std::string format_system_points(const DefBase& base, const SystemFile& s) {
  if (s.kind == SystemKind::kInd) return format_points(base, s.ind, points_ind(base, s.ind));
  return format_points(base, s.pro, points_pro(base, s.pro));
}

std::size_t count_system_points(const DefBase& base, const SystemFile& s) {
  if (s.kind == SystemKind::kInd) return points_ind(base, s.ind).size();
  return points_pro(base, s.pro).size();
}

}  // namespace proind::points
