#include "proind/verify.hpp"

#include <iostream>

#include "doctest.h"
#include "proind/errors.hpp"

using namespace proind;
using namespace proind::verify;

namespace {

Config small_config() {
  Config c;
  c.bijective_cases = 15;
  c.non_bijective_cases = 5;
  c.samples = 3;
  return c;
}

void require_pass(const Report& r) {
  if (!r.passed()) std::cerr << format_text(r);
  CHECK(r.passed());
}

const Check& find_check(const Report& r, const std::string& name, const std::string& structure) {
  for (const auto& c : r.checks) {
    if (c.name == name && c.structure == structure) return c;
  }
  FAIL("missing check " << name << " " << structure);
  return r.checks.front();
}

std::string count_of(const Check& c, const std::string& key) {
  for (const auto& [k, v] : c.counts) {
    if (k == key) return v;
  }
  return "";
}

}  // namespace

TEST_CASE("every suite passes on the bundled structures") {
  for (auto name : suite_names()) {
    CAPTURE(name);
    require_pass(run_suite(name, small_config()));
  }
}

TEST_CASE("prop-points counts") {
  auto r = run_suite("prop-points", small_config());
  CHECK(count_of(find_check(r, "d-on-morphisms", "S1"), "families") == "6");
  CHECK(count_of(find_check(r, "d-on-morphisms", "S2"), "families") == "3");
  CHECK(count_of(find_check(r, "d-on-morphisms", "S3"), "families") == "1");
  CHECK(count_of(find_check(r, "hom-dm", "S3"), "sets") == "4");
  CHECK(count_of(find_check(r, "type-points", "S3"), "chains") == "11");
}

TEST_CASE("builders reject every non-bijective case") {
  auto models = bundled_models();
  auto ind = check_builders_ind(models, 3, 10, 10);
  auto pro = check_builders_pro(models, 3, 10, 10);
  CHECK(ind.pass);
  CHECK(pro.pass);
  CHECK(count_of(ind, "rejected") == "10");
  CHECK(count_of(pro, "rejected") == "10");
  CHECK(count_of(ind, "certified") == "10");
  CHECK(count_of(pro, "certified") == "10");
}

TEST_CASE("random cases are reproducible from the seed") {
  auto models = bundled_models();
  Rng a(11), b(11);
  for (int n = 0; n < 10; ++n) {
    auto x = random_ind_case(models, a, n % 2 == 0);
    auto y = random_ind_case(models, b, n % 2 == 0);
    CHECK(x.shape == y.shape);
    CHECK(x.f == y.f);
    auto p = random_pro_case(models, a, n % 2 == 0);
    auto q = random_pro_case(models, b, n % 2 == 0);
    CHECK(p.shape == q.shape);
    CHECK(p.f == q.f);
  }
}

TEST_CASE("reports are byte-identical for one seed") {
  for (auto name : {"prop-compact", "cor-proind", "lemma-iso"}) {
    auto a = run_suite(name, small_config());
    auto b = run_suite(name, small_config());
    CHECK(format_text(a) == format_text(b));
    CHECK(format_records(a) == format_records(b));
  }
}

TEST_CASE("failures are reported with counterexamples") {
  Check c{"demo", "S1"};
  for (int k = 0; k < 5; ++k) c.failure("case " + std::to_string(k));
  CHECK_FALSE(c.pass);
  CHECK(c.counterexamples.size() == 3);
  Report r{"demo", 1, 1, {c}};
  CHECK_FALSE(r.passed());
  auto text = format_text(r);
  CHECK(text.find("FAIL demo [S1]") != std::string::npos);
  CHECK(text.find("  counterexample: case 0") != std::string::npos);
  CHECK(format_records(r).find("verdict=FAIL") != std::string::npos);
}

TEST_CASE("unknown suite") {
  try {
    run_suite("nope", Config{});
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kInvalidArgument);
  }
}
