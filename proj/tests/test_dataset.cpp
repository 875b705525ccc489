#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <set>
#include <unistd.h>

#include "hashbound/dataset.hpp"
#include "hashbound/errors.hpp"

using namespace hashbound;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("hashbound_dataset_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  fs::path write(const std::string& name, const std::string& text) const {
    std::ofstream(path / name) << text;
    return path / name;
  }
};

}  // namespace

TEST_CASE("generate_synthetic") {
  SyntheticSpec spec;
  spec.num_classes = 4;
  spec.per_class = 5;
  spec.dim = 3;

  const auto d = generate_synthetic(spec);
  CHECK(d.size() == 20);
  CHECK(d.dim() == 3);
  CHECK(d.num_classes == 4);
  CHECK_NOTHROW(d.validate());
  for (std::size_t i = 0; i < d.size(); ++i) CHECK(d.labels[i] == static_cast<int>(i / 5));

  const auto again = generate_synthetic(spec);
  CHECK(d.features == again.features);
  spec.seed = 2;
  CHECK(d.features != generate_synthetic(spec).features);

  SUBCASE("zero noise puts every sample on its center") {
    spec.noise_sigma = 0.0;
    const auto z = generate_synthetic(spec);
    for (std::size_t i = 0; i < z.size(); ++i) {
      const auto first = static_cast<Eigen::Index>(5 * (i / 5));
      CHECK(z.features.row(static_cast<Eigen::Index>(i)) == z.features.row(first));
    }
    CHECK(z.features.row(0).norm() == doctest::Approx(spec.center_scale));
  }
  SUBCASE("invalid specs") {
    spec.num_classes = 1;
    CHECK_THROWS_AS(generate_synthetic(spec), InputError);
    spec = {};
    spec.noise_sigma = -1;
    CHECK_THROWS_AS(generate_synthetic(spec), InputError);
  }
}

TEST_CASE("load_csv") {
  TempDir tmp;

  SUBCASE("sparse labels are remapped densely") {
    const auto path = tmp.write("a.csv", "label,f0,f1\n5,1.0,2.0\n5,3,4\n9,-1e-3,+0.5\n");
    const auto d = load_csv(path);
    CHECK(d.size() == 3);
    CHECK(d.dim() == 2);
    CHECK(d.num_classes == 2);
    CHECK(d.labels == std::vector<int>{0, 0, 1});
    CHECK(d.label_values == std::vector<long long>{5, 9});
    CHECK(d.features(2, 0) == -1e-3);
    CHECK(d.features(2, 1) == 0.5);
  }
  SUBCASE("header only") {
    CHECK_THROWS_AS(load_csv(tmp.write("h.csv", "label,f0\n")), ParseError);
  }
  SUBCASE("malformed line names its line number") {
    const auto path = tmp.write("bad.csv", "label,f0,f1\n0,1,2\n1,3,oops\n");
    try {
      load_csv(path);
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(std::string(e.what()).find(":3:") != std::string::npos);
    }
  }
  SUBCASE("wrong field count") {
    CHECK_THROWS_AS(load_csv(tmp.write("w.csv", "label,f0,f1\n0,1\n")), ParseError);
  }
  SUBCASE("bad header") {
    CHECK_THROWS_AS(load_csv(tmp.write("b.csv", "y,f0\n0,1\n")), ParseError);
  }
  SUBCASE("missing file") {
    CHECK_THROWS_AS(load_csv(tmp.path / "absent.csv"), InputError);
  }
  SUBCASE("round trip is exact") {
    SyntheticSpec spec;
    spec.num_classes = 3;
    spec.per_class = 4;
    spec.dim = 5;
    const auto d = generate_synthetic(spec);
    write_csv(tmp.path / "rt.csv", d);
    const auto back = load_csv(tmp.path / "rt.csv");
    CHECK(back.features == d.features);
    CHECK(back.labels == d.labels);
  }
}

TEST_CASE("split") {
  const auto data = generate_synthetic({});  // 10 classes x 100

  SUBCASE("protocol sizes") {
    const auto s = split(data, {}, 11);
    CHECK(s.query.size() == 100);
    CHECK(s.train.size() == 500);
    CHECK(s.validation.size() == 100);
    CHECK(s.database.size() == data.size() - 100);
  }
  SUBCASE("partition and disjointness") {
    const auto s = split(data, {}, 11);
    std::set<std::size_t> q(s.query.begin(), s.query.end());
    std::set<std::size_t> db(s.database.begin(), s.database.end());
    CHECK(q.size() + db.size() == data.size());
    for (auto i : q) CHECK(db.count(i) == 0);
    for (auto i : s.train) CHECK(db.count(i) == 1);
    for (auto i : s.validation) CHECK(db.count(i) == 1);
    std::set<std::size_t> t(s.train.begin(), s.train.end());
    for (auto i : s.validation) CHECK(t.count(i) == 0);
    CHECK(std::is_sorted(s.train.begin(), s.train.end()));
    CHECK(std::is_sorted(s.query.begin(), s.query.end()));

    std::vector<int> per_class(10, 0);
    for (auto i : s.query) ++per_class[static_cast<std::size_t>(data.labels[i])];
    for (int n : per_class) CHECK(n == 10);
  }
  SUBCASE("all remaining rows train") {
    SplitSpec spec;
    spec.train_per_class = std::nullopt;
    const auto s = split(data, spec, 11);
    CHECK(s.train.size() == 800);
  }
  SUBCASE("seeded") {
    CHECK(split(data, {}, 11).query == split(data, {}, 11).query);
    CHECK(split(data, {}, 11).query != split(data, {}, 12).query);
  }
  SUBCASE("infeasible specs") {
    SplitSpec all_query;
    all_query.query_per_class = 100;
    all_query.train_per_class = 0;
    all_query.validation_per_class = 0;
    CHECK_THROWS_AS(split(data, all_query, 11), InputError);
    SplitSpec too_many;
    too_many.train_per_class = 95;
    CHECK_THROWS_AS(split(data, too_many, 11), InputError);
  }
  SUBCASE("json round trip") {
    const auto s = split(data, {}, 11);
    const auto back = split_from_json(split_to_json(s));
    CHECK(back.train == s.train);
    CHECK(back.validation == s.validation);
    CHECK(back.query == s.query);
    CHECK(back.database == s.database);
    CHECK_THROWS_AS(split_from_json("{nope"), ParseError);
  }
}
