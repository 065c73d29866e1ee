#include "mtlambda/json_io.hpp"
#include "mtlambda/pipeline.hpp"

#include <doctest.h>

#include "support.hpp"

#include <cstdlib>
#include <fstream>
#include <thread>
#include <unistd.h>

using namespace mtlambda;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("mtlambda-test-" + std::to_string(::getpid()) + "-" +
                                        std::to_string(reinterpret_cast<std::uintptr_t>(this)));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

void write_file(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

}  // namespace

TEST_CASE("integers and infinity in JSON") {
  CHECK(integer_to_json(Integer(-24)) == Json(-24));
  const Integer big("123456789012345678901234567890");
  CHECK(integer_to_json(big).is_string());
  CHECK(integer_from_json(integer_to_json(big)) == big);
  CHECK(integer_from_json(Json(17)) == 17);
  CHECK_THROWS_AS(integer_from_json(Json(1.5)), std::invalid_argument);
  CHECK_THROWS_AS(integer_from_json(Json("12x")), std::invalid_argument);
  CHECK(extended_to_json(ExtendedInt::infinity()) == Json("inf"));
  CHECK(extended_from_json(Json("inf")).is_infinite());
  CHECK(extended_from_json(Json(7)) == ExtendedInt(7));
}

TEST_CASE("theta JSON layout") {
  const auto c = testing::theta("27a1", 3, 1);
  ThetaExport t;
  t.form = "27a1";
  t.element = &c.result.element;
  t.invariants = c.result.invariants;
  t.n = 1;
  t.modulus = c.raw.modulus;
  t.projection = "norm";
  t.normalization = kNormalizationTag;
  const Json j = theta_to_json(t);
  std::vector<std::string> keys;
  for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
  const std::vector<std::string> expected = {"p", "n", "M", "basis", "coefficients", "mu", "lambda",
                                             "precision_certified", "form", "group_ring_level", "modulus",
                                             "exact_zero", "projection", "normalization"};
  CHECK(keys == expected);
  CHECK(j["lambda"] == 1);
  CHECK(j["coefficients"].size() == 3);
  CHECK(theta_to_json(t).dump() == j.dump());
}

TEST_CASE("CSV output") {
  CHECK(csv_escape("plain") == "plain");
  CHECK(csv_escape("a,b") == "\"a,b\"");
  CHECK(csv_escape("say \"hi\"") == "\"say \"\"hi\"\"\"");
  LambdaTableRow row;
  row.form = "27a1";
  row.p = 3;
  row.pattern = "3^m - 2";
  row.normalization = "n";
  row.entries = {{1, 1, 1, true, false, 13}, {2, 1, 7, true, false, 14}};
  const std::string csv = lambda_rows_to_csv({row}, 2);
  CHECK(csv == "form,n=1,n=2,pattern,mu,precision,normalization\r\n27a1,1,7,3^m - 2,1 1,13 14,n\r\n");
  CHECK(lambda_rows_to_csv({}, 3) == "form,n=1,n=2,n=3,pattern,mu,precision,normalization\r\n");
  const Json j = lambda_row_to_json(row);
  CHECK(j["entries"][1]["lambda"] == 7);
}

TEST_CASE("curve files and form names") {
  TempDir dir;
  write_file(dir.path / "ok.txt", "# c\n27a1 [0,0,1,0,-7] 27\n11a1 [0,-1,1,-10,-20] 11\n");
  const auto curves = load_curves(dir.path / "ok.txt");
  REQUIRE(curves.size() == 2);
  CHECK(resolve_form("27a", curves).name == "27a1");
  CHECK(resolve_form("11a1", curves).level == 11);
  CHECK(resolve_form("delta", curves).is_delta);
  try {
    resolve_form("37a1", curves);
    FAIL("expected an error");
  } catch (const UnknownFormError& e) {
    const std::string what = e.what();
    CHECK(what.find("37a1") != std::string::npos);
    CHECK(what.find("27a1") != std::string::npos);
    CHECK(what.find("11a1") != std::string::npos);
  }
  write_file(dir.path / "bad.txt", "27a1 [0,0,1,0,-7] 27\n27b [0,0,1] 27\n");
  try {
    load_curves(dir.path / "bad.txt");
    FAIL("expected an error");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()).find("bad.txt:2") != std::string::npos);
  }
  CHECK_THROWS_AS(load_curves(dir.path / "missing.txt"), std::runtime_error);
}

TEST_CASE("eigen data") {
  const auto d = eigen_data(testing::form("delta"), 13);
  CHECK(d.at(2) == -24);
  CHECK(d.at(13) == -577738);
  const auto e = eigen_data(testing::form("11a1"), 13);
  CHECK(e.at(11) == 1);
  CHECK(e.at(2) == -2);
}

TEST_CASE("cache round trip") {
  TempDir dir;
  const EigenCache cache(dir.path);
  const auto& phi = testing::symbol("27a1");
  const auto fp = eigen_fingerprint(27, 2, phi.eigenvalues);
  CHECK(fp.size() == 16);
  CHECK_FALSE(cache.load(27, 2, fp));
  cache.store(phi, fp);
  const auto back = cache.load(27, 2, fp);
  REQUIRE(back);
  CHECK(back->generator_values == phi.generator_values);
  CHECK(back->value_at_01(Rational(4, 27)) == phi.value_at_01(Rational(4, 27)));
  CHECK_FALSE(cache.load(27, 2, "0000000000000000"));
  CHECK_FALSE(cache.load(32, 2, fp));
  const auto entries = cache.list();
  REQUIRE(entries.size() == 1);
  CHECK(entries[0].level == 27);
  CHECK(entries[0].fingerprint == fp);

  // A truncated file is ignored.
  write_file(cache.entry_path(27, 2, fp), "{\"format\":");
  CHECK_FALSE(cache.load(27, 2, fp));
  CHECK(cache.clear() == 1);
  CHECK(cache.list().empty());
}

TEST_CASE("concurrent writers never expose partial files") {
  TempDir dir;
  const EigenCache cache(dir.path);
  const auto& phi = testing::symbol("delta");
  const auto fp = eigen_fingerprint(1, 12, phi.eigenvalues);
  std::vector<std::thread> writers;
  for (int i = 0; i < 8; ++i)
    writers.emplace_back([&] {
      for (int k = 0; k < 5; ++k) cache.store(phi, fp);
    });
  bool all_complete = true;
  for (int k = 0; k < 50; ++k) {
    const auto loaded = cache.load(1, 12, fp);
    if (loaded && loaded->generator_values != phi.generator_values) all_complete = false;
  }
  for (auto& t : writers) t.join();
  CHECK(all_complete);
  CHECK(cache.list().size() == 1);
  for (const auto& entry : fs::directory_iterator(dir.path))
    CHECK(entry.path().filename().string().rfind(".tmp", 0) != 0);
}

TEST_CASE("cache directory resolution") {
  ::unsetenv(kCacheDirEnv);
  CHECK_FALSE(EigenCache::resolve_dir(std::nullopt));
  CHECK(*EigenCache::resolve_dir(std::string("/x")) == fs::path("/x"));
  ::setenv(kCacheDirEnv, "/from-env", 1);
  CHECK(*EigenCache::resolve_dir(std::nullopt) == fs::path("/from-env"));
  CHECK(*EigenCache::resolve_dir(std::string("/x")) == fs::path("/x"));
  ::unsetenv(kCacheDirEnv);
}

TEST_CASE("warm and cold cache give identical results") {
  TempDir dir;
  PipelineOptions opts;
  opts.cache_dir = dir.path;
  const FormSource f = testing::form("36a1");
  const auto cold = eigen_symbol_for(f, opts);
  const auto warm = eigen_symbol_for(f, opts);
  CHECK_FALSE(cold.cache_hit);
  CHECK(warm.cache_hit);
  CHECK(cold.fingerprint == warm.fingerprint);
  const auto a = lambda_row(f, cold.phi, 3, 3, opts);
  const auto b = lambda_row(f, warm.phi, 3, 3, opts);
  CHECK(lambda_row_to_json(a).dump() == lambda_row_to_json(b).dump());
  CHECK(lambda_row_to_json(a)["entries"][2]["lambda"] == 26);
}
