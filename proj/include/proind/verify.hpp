#pragma once

#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "proind/defsets.hpp"
#include "proind/points.hpp"

namespace proind::verify {

using points::DefBase;
using points::Ind;
using points::Pro;

struct NamedModel {
  std::string name;
  std::shared_ptr<const defsets::Model> model;
};

// The arity cap used for models in the suites: levels of arity up to 3 need
// their kernel pairs.
inline constexpr std::uint32_t kSuiteArityCap = 8;

std::vector<NamedModel> bundled_models(std::uint64_t cap_hom = 1'000'000);

struct Config {
  std::vector<NamedModel> structures;  // empty means the bundled S1, S2, S3
  std::uint32_t arity_bound = 1;
  std::uint64_t seed = 7;
  std::uint64_t cap_hom = 1'000'000;
  std::size_t bijective_cases = 100;     // per variant
  std::size_t non_bijective_cases = 20;  // per variant
  std::size_t samples = 8;               // sampled system pairs per structure
};

struct Check {
  std::string name;
  std::string structure;
  bool pass = true;
  std::vector<std::pair<std::string, std::string>> counts;
  std::vector<std::string> counterexamples;

  void count(std::string key, std::size_t value) { counts.emplace_back(std::move(key), std::to_string(value)); }
  // Records a failure; only the first few counterexamples are kept.
  void failure(std::string what);
};

struct Report {
  std::string suite;
  std::uint64_t seed = 0;
  std::uint32_t arity_bound = 0;
  std::vector<Check> checks;

  bool passed() const;
};

std::vector<std::string_view> suite_names();
// InvalidArgument for an unknown name.
Report run_suite(std::string_view name, const Config& config);

std::string format_text(const Report& r);
std::string format_records(const Report& r);

// ---------------------------------------------------------------------------
// Individual checks, each over one structure.

Check check_hom_dm(const NamedModel& m, std::uint32_t arity_bound);
Check check_naturality(const NamedModel& m, std::uint32_t arity_bound);
Check check_d_on_morphisms(const NamedModel& m, std::uint32_t arity_bound);
Check check_union_points(const NamedModel& m);
Check check_type_points(const NamedModel& m);
Check check_eq_relation_points(const NamedModel& m);
Check check_cofinal_invariance(const NamedModel& m);

// Seeded point-bijective (or deliberately non-bijective) inputs for the
// builders, over a random choice of the given structures.
using Rng = std::mt19937_64;

struct IndCase {
  std::string structure;
  std::string shape;
  DefBase base;
  Ind x;
  defsets::DefSet y;
  std::vector<defsets::DefMap> f;  // f_i: X_i -> Y
};

struct ProCase {
  std::string structure;
  std::string shape;
  DefBase base;
  Pro x;
  defsets::DefSet y;
  std::vector<defsets::DefMap> f;  // f_i: Y -> X_i
};

IndCase random_ind_case(const std::vector<NamedModel>& models, Rng& rng, bool bijective, std::uint32_t max_arity = 2);
ProCase random_pro_case(const std::vector<NamedModel>& models, Rng& rng, bool bijective, std::uint32_t max_arity = 2);

Check check_builders_ind(const std::vector<NamedModel>& models, std::uint64_t seed, std::size_t bijective,
                         std::size_t non_bijective);
Check check_builders_pro(const std::vector<NamedModel>& models, std::uint64_t seed, std::size_t bijective,
                         std::size_t non_bijective);

Check check_graph_round_trip(const NamedModel& m);
Check check_full_relation_rejected(const NamedModel& m);
Check check_inverse_from_points(const std::vector<NamedModel>& models, std::uint64_t seed, std::size_t cases);

Check check_lemma_pullback(const std::vector<NamedModel>& models, std::uint64_t seed, std::size_t cases);
Check check_lemma_pushout(const std::vector<NamedModel>& models, std::uint64_t seed, std::size_t cases);
Check check_lemma_failures(const NamedModel& m);

Check check_slice_ind(const NamedModel& m);
Check check_slice_pro(const NamedModel& m);

Check check_cor_ind(const NamedModel& m, std::uint64_t seed, std::size_t samples);
Check check_cor_pro(const NamedModel& m, std::uint64_t seed, std::size_t samples);

}  // namespace proind::verify
