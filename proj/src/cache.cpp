#include "proind/cache.hpp"

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <system_error>
#include <unistd.h>

#include "json.hpp"
#include "proind/errors.hpp"

namespace proind::cache {

namespace {

using defsets::DefSet;
using json = nlohmann::json;

constexpr int kVersion = 1;

std::filesystem::path entry_path(const std::filesystem::path& dir, const std::string& key) {
  return dir / (key + ".json");
}

json set_to_json(const DefSet& s) { return {{"arity", s.arity}, {"codes", s.codes}}; }

DefSet set_from_json(const json& j) {
  return DefSet{j.at("arity").get<std::uint32_t>(), j.at("codes").get<std::vector<defsets::Code>>()};
}

std::shared_ptr<const defsets::Model> from_entry(const json& j, defsets::FinStructure structure,
                                                 const defsets::Caps& caps) {
  defsets::AutGroup aut;
  aut.elements = j.at("aut").get<std::vector<defsets::Perm>>();
  aut.generators = j.at("generators").get<std::vector<defsets::Perm>>();
  auto model = std::make_shared<const defsets::Model>(std::move(structure), caps, std::move(aut));
  for (const auto& t : j.at("orbits")) {
    model->seed_orbits({t.at("arity").get<std::uint32_t>(), t.at("orbits").get<std::vector<std::vector<defsets::Code>>>()});
  }
  for (const auto& h : j.at("homs")) {
    model->seed_hom({set_from_json(h.at("from")), set_from_json(h.at("to")),
                     h.at("tables").get<std::vector<std::vector<std::uint32_t>>>()});
  }
  return model;
}

}  // namespace

std::string content_key(std::string_view structure_text, const defsets::Caps& caps) {
  std::uint64_t h = 14695981039346656037ull;
  auto mix = [&](std::string_view s) {
    for (unsigned char ch : s) {
      h ^= ch;
      h *= 1099511628211ull;
    }
  };
  mix(structure_text);
  mix("|arity=" + std::to_string(caps.max_arity) + "|hom=" + std::to_string(caps.max_hom_candidates));
  std::ostringstream out;
  out << std::hex;
  out.width(16);
  out.fill('0');
  out << h;
  return out.str();
}

std::optional<std::filesystem::path> resolve_dir(const std::string& flag) {
  if (const char* env = std::getenv(kCacheDirEnv); env != nullptr && *env != '\0') return std::filesystem::path(env);
  if (!flag.empty()) return std::filesystem::path(flag);
  return std::nullopt;
}

Loaded load_model(std::string_view structure_text, const defsets::Caps& caps,
                  const std::optional<std::filesystem::path>& dir) {
  defsets::FinStructure structure = defsets::parse_structure(structure_text);
  if (dir) {
    std::ifstream in(entry_path(*dir, content_key(structure_text, caps)));
    if (in) {
      try {
        json j = json::parse(in);
        if (j.at("version").get<int>() == kVersion && j.at("key") == content_key(structure_text, caps)) {
          return {from_entry(j, structure, caps), true};
        }
      } catch (const json::exception&) {
      } catch (const Error&) {
      }
    }
  }
  return {std::make_shared<const defsets::Model>(std::move(structure), caps), false};
}

void store_model(const defsets::Model& model, std::string_view structure_text, const std::filesystem::path& dir) {
  const std::string key = content_key(structure_text, model.caps());
  json j;
  j["version"] = kVersion;
  j["key"] = key;
  j["aut"] = model.aut().elements;
  j["generators"] = model.aut().generators;
  j["orbits"] = json::array();
  for (const auto& t : model.computed_orbits()) j["orbits"].push_back({{"arity", t.arity}, {"orbits", t.orbits}});
  j["homs"] = json::array();
  for (const auto& h : model.computed_homs()) {
    j["homs"].push_back({{"from", set_to_json(h.from)}, {"to", set_to_json(h.to)}, {"tables", h.tables}});
  }
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) fail(ErrorKind::kInvalidArgument, "cannot create cache directory " + dir.string() + ": " + ec.message());
  const auto target = entry_path(dir, key);
  auto temp = target;
  temp += ".tmp" + std::to_string(::getpid());
  {
    std::ofstream out(temp, std::ios::trunc);
    if (!out) fail(ErrorKind::kInvalidArgument, "cannot write " + temp.string());
    out << j.dump();
    if (!out.flush()) fail(ErrorKind::kInvalidArgument, "cannot write " + temp.string());
  }
  std::filesystem::rename(temp, target, ec);
  if (ec) {
    std::filesystem::remove(temp, ec);
    fail(ErrorKind::kInvalidArgument, "cannot move the cache entry into " + target.string());
  }
}

}  // namespace proind::cache
