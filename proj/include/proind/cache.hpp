#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "proind/defsets.hpp"

namespace proind::cache {

inline constexpr const char* kCacheDirEnv = "PROIND_CACHE_DIR";

// FNV-1a over the structure text and the caps, as 16 hex digits.
std::string content_key(std::string_view structure_text, const defsets::Caps& caps);

// The environment variable wins over the flag; empty means no cache.
std::optional<std::filesystem::path> resolve_dir(const std::string& flag);

struct Loaded {
  std::shared_ptr<const defsets::Model> model;
  bool hit = false;
};

// Builds the model for a structure text, seeding Aut(M), orbit tables and Hom
// tables from the cache when an entry for the same key exists. Unreadable or
// inconsistent entries are ignored.
Loaded load_model(std::string_view structure_text, const defsets::Caps& caps,
                  const std::optional<std::filesystem::path>& dir);

// Writes everything the model has computed, to a temporary file renamed into
// place.
void store_model(const defsets::Model& model, std::string_view structure_text,
                 const std::filesystem::path& dir);

}  // namespace proind::cache
