#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pdineq/fuzz.hpp"
#include "pdineq/report.hpp"

using namespace pdineq;

namespace {

Json without_timing(const FuzzReport& r) {
  Json j = to_json(r);
  j.erase("wall_seconds");
  return j;
}

GenConfig config(std::size_t n, std::vector<std::size_t> part = {}, std::uint64_t seed = 42) {
  GenConfig cfg;
  cfg.n = n;
  cfg.partition = std::move(part);
  cfg.seed = seed;
  return cfg;
}

}  // namespace

TEST_CASE("seed derivation is deterministic and spreads trials") {
  CHECK(derive_seed(1, 2) == derive_seed(1, 2));
  CHECK(derive_seed(1, 2) != derive_seed(1, 3));
  CHECK(derive_seed(1, 2) != derive_seed(2, 2));
}

TEST_CASE("generated matrices are bit identical for a fixed seed and trial") {
  for (auto style : {GeneratorStyle::Spectral, GeneratorStyle::Gram}) {
    auto cfg = config(5);
    cfg.style = style;
    CHECK(gen_pd(cfg, 3).matrix() == gen_pd(cfg, 3).matrix());
    CHECK_FALSE(gen_pd(cfg, 3).matrix() == gen_pd(cfg, 4).matrix());
  }
}

TEST_CASE("a 1x1 generated matrix is a positive scalar") {
  auto cfg = config(1);
  for (std::uint64_t t = 0; t < 20; ++t) {
    const auto a = gen_pd(cfg, t);
    CHECK(a.dim() == 1);
    CHECK(a(0, 0) > 0.0);
  }
}

TEST_CASE("condition number stays below the cap") {
  for (auto style : {GeneratorStyle::Spectral, GeneratorStyle::Gram}) {
    auto cfg = config(6);
    cfg.style = style;
    cfg.kappa_max = 1e3;
    for (std::uint64_t t = 0; t < 50; ++t) {
      const auto s = jacobi_eigen(gen_pd(cfg, t)).values;
      CHECK(s.max() / s.min() <= 1e3 * (1 + 1e-9));
    }
  }
}

TEST_CASE("kappa one gives a multiple of the identity") {
  auto cfg = config(5);
  cfg.kappa_max = 1.0;
  const auto a = gen_pd(cfg, 0);
  const auto s = jacobi_eigen(a).values;
  CHECK(s.max() / s.min() == doctest::Approx(1.0).epsilon(1e-12));
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 5; ++j)
      CHECK(a(i, j) == doctest::Approx(i == j ? a(0, 0) : 0.0).scale(a(0, 0)).epsilon(1e-12));
}

TEST_CASE("gram style gives up after repeated rejections") {
  auto cfg = config(4);
  cfg.style = GeneratorStyle::Gram;
  cfg.kappa_max = 1.0 + 1e-9;
  try {
    gen_pd(cfg, 0);
    FAIL("expected ResampleExhausted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ResampleExhausted);
  }
}

TEST_CASE("config validation") {
  auto cfg = config(4, {3, 2});
  CHECK_THROWS_AS(validate(cfg), Error);
  cfg = config(0);
  CHECK_THROWS_AS(validate(cfg), Error);
  cfg = config(4);
  cfg.kappa_max = 0.5;
  CHECK_THROWS_AS(validate(cfg), Error);
  CHECK_THROWS_AS(fuzz(InequalityId::Matic, config(4), 0), Error);
}

TEST_CASE("reports are deterministic and independent of thread count") {
  auto cfg = config(5);
  cfg.threads = 1;
  const auto a = fuzz(InequalityId::MainTheorem, cfg, 300);
  cfg.threads = 4;
  const auto b = fuzz(InequalityId::MainTheorem, cfg, 300);
  CHECK(without_timing(a).dump() == without_timing(b).dump());
  CHECK(a.trials == 300);
  CHECK(a.holds + a.violations == 300);

  auto false_cfg = config(4, {2, 2}, 7);
  false_cfg.threads = 1;
  const auto c = fuzz(InequalityId::InvSquareSum, false_cfg, 500);
  false_cfg.threads = 3;
  const auto d = fuzz(InequalityId::InvSquareSum, false_cfg, 500);
  CHECK(without_timing(c).dump() == without_timing(d).dump());
}

TEST_CASE("trial instances do not depend on the trial count") {
  const auto cfg = config(4);
  for (auto id : {InequalityId::Matic, InequalityId::Choi, InequalityId::AbsPower}) {
    CHECK(to_json(gen_instance(id, cfg, 17)).dump() == to_json(gen_instance(id, cfg, 17)).dump());
  }
  auto abs_cfg = config(4);
  abs_cfg.p = 2.0;
  const auto small = fuzz(InequalityId::AbsPower, abs_cfg, 300);
  const auto large = fuzz(InequalityId::AbsPower, abs_cfg, 3000);
  REQUIRE(small.records.size() < abs_cfg.max_records);
  std::vector<std::string> prefix;
  for (const auto& r : large.records)
    if (r.trial < 300) prefix.push_back(to_json(r.verdict).dump());
  std::vector<std::string> got;
  for (const auto& r : small.records) got.push_back(to_json(r.verdict).dump());
  CHECK(prefix == got);
}

TEST_CASE("known counterexample is injected as trial zero") {
  const auto r = fuzz(InequalityId::InvSquareSum, config(4, {2, 2}), 1);
  CHECK(r.violations == 1);
  REQUIRE(r.records.size() == 1);
  CHECK(r.records[0].injected);
  CHECK(r.records[0].trial == 0);
  CHECK(r.records[0].verdict.rhs == doctest::Approx(51.0669).epsilon(1e-5));

  auto no_inject = config(4, {2, 2});
  no_inject.inject_known = false;
  const auto plain = fuzz(InequalityId::InvSquareSum, no_inject, 1);
  CHECK((plain.records.empty() || !plain.records[0].injected));
}

TEST_CASE("stored violations replay to the same verdict") {
  for (auto [id, p] : {std::pair{InequalityId::AbsPower, 2.0}, std::pair{InequalityId::CommutedPower, 2.0},
                       std::pair{InequalityId::InvSquareSum, 1.0}, std::pair{InequalityId::NegPower, -1.0}}) {
    auto cfg = config(id == InequalityId::NegPower ? 2 : 4, {});
    cfg.p = p;
    cfg.keep_instances = true;
    const auto r = fuzz(id, cfg, 2000);
    CHECK(r.violations >= 1);
    for (const auto& rec : r.records) {
      REQUIRE(rec.instance);
      const auto replay = evaluate(id, *rec.instance, cfg.tolerance);
      CHECK(replay.holds == rec.verdict.holds);
      CHECK(replay.margin == rec.verdict.margin);
      // also through the JSON form
      const auto from_json = instance_from_json(to_json(*rec.instance));
      CHECK(evaluate(id, from_json, cfg.tolerance).holds == rec.verdict.holds);
    }
  }
}

TEST_CASE("violation counts stay exact when records are capped") {
  auto cfg = config(2, {1, 1});
  cfg.p = -1.0;
  cfg.max_records = 3;
  const auto r = fuzz(InequalityId::NegPower, cfg, 200);
  CHECK(r.records.size() == 3);
  CHECK(r.violations > 3);
}

TEST_CASE("theorem ids produce no violations on a small grid") {
  for (auto id : {InequalityId::MainTheorem, InequalityId::Matic, InequalityId::DetPower, InequalityId::Choi,
                  InequalityId::Thm32, InequalityId::Lemma31, InequalityId::FischerTail, InequalityId::KyFan}) {
    CAPTURE(to_string(id));
    for (std::size_t n = 2; n <= 6; ++n) CHECK(fuzz(id, config(n), 100).violations == 0);
  }
}
