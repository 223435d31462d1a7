#include <doctest.h>

#include <algorithm>
#include <random>
#include <sstream>

#include "fixtures.hpp"
#include "netprep/error.hpp"
#include "netprep/pmf.hpp"
#include "netprep/synthetic.hpp"
#include "oracles.hpp"

using namespace netprep;

namespace {

const std::vector<std::string> kProtocols{"TCP", "UDP", "UDP", "UDP", "RTP", "RTP", "ICMP", "TCP", "TCP"};

}  // namespace

TEST_CASE("worked protocol example") {
  const auto table = pmf::fit(kProtocols, "protocol_type");
  CHECK(table.sample_size() == 9);
  CHECK(table.count("UDP") == 3);
  CHECK(table.frequency("TCP") == doctest::Approx(3.0 / 9).epsilon(1e-15));
  CHECK(table.frequency("RTP") == doctest::Approx(2.0 / 9).epsilon(1e-15));
  CHECK(table.frequency("ICMP") == doctest::Approx(1.0 / 9).epsilon(1e-15));
  const auto mapped = pmf::transform(table, kProtocols);
  const std::vector<double> expected{3, 3, 3, 3, 2, 2, 1, 3, 3};
  for (std::size_t i = 0; i < mapped.size(); ++i) CHECK(mapped[i] == expected[i] / 9.0);
}

TEST_CASE("simple tables") {
  CHECK(pmf::fit(std::vector<std::string>(13, "only")).frequency("only") == 1.0);
  std::vector<std::string> ab(7, "a");
  ab.insert(ab.end(), 3, "b");
  const auto table = pmf::fit(ab);
  CHECK(table.frequency("a") == doctest::Approx(0.7));
  CHECK(table.frequency("b") == doctest::Approx(0.3));
  CHECK(table.frequency("c") == 0.0);
  CHECK(pmf::transform(table, std::vector<std::string>{"zzz", "b"}) == std::vector<double>{0.0, table.frequency("b")});
  CHECK(pmf::transform(table, std::vector<std::string>{}).empty());
  CHECK_THROWS_AS(pmf::fit(std::vector<std::string>{}), error);
}

TEST_CASE("table invariants on random columns") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const auto m = std::uniform_int_distribution<std::size_t>(1, 300)(rng);
    const auto k = std::uniform_int_distribution<int>(1, 12)(rng);
    std::vector<std::string> column(m);
    for (auto& s : column) s = "s" + std::to_string(std::uniform_int_distribution<int>(0, k - 1)(rng));
    const auto table = pmf::fit(column);
    const auto freq = oracle::relative_frequencies(column);
    double sum = 0.0;
    for (const auto& [symbol, f] : freq) {
      const double got = table.frequency(symbol);
      CHECK(got == doctest::Approx(f).epsilon(1e-15));
      CHECK(got > 0.0);
      CHECK(got <= 1.0);
      const double r = got * static_cast<double>(m);
      CHECK(std::fabs(r - std::round(r)) <= 1e-9);
      sum += got;
    }
    CHECK(std::fabs(sum - 1.0) <= 1e-12);

    std::vector<std::size_t> perm(m);
    for (std::size_t i = 0; i < m; ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<std::string> shuffled(m);
    for (std::size_t i = 0; i < m; ++i) shuffled[i] = column[perm[i]];
    const auto base = pmf::transform(table, column);
    const auto moved = pmf::transform(pmf::fit(shuffled), shuffled);
    for (std::size_t i = 0; i < m; ++i) CHECK(moved[i] == base[perm[i]]);

    std::vector<std::string> renamed(m);
    for (std::size_t i = 0; i < m; ++i) renamed[i] = "x_" + column[i];
    CHECK(pmf::transform(pmf::fit(renamed), renamed) == base);
  }
}

TEST_CASE("dataset transform") {
  const Dataset numeric = DatasetBuilder().numeric("a", {1, 2}).labels({ClassLabel::Normal, ClassLabel::Anomaly}).build();
  const auto unchanged = pmf::fit_transform_dataset(numeric);
  CHECK(unchanged.data == numeric);
  CHECK(unchanged.tables.empty());

  const Dataset train = project(synthetic::nsl_kdd_like(400, 21), FeatureSet::mvf().renamed(nsl_kdd_preset_renames()));
  const auto fitted = pmf::fit_transform_dataset(train);
  CHECK(fitted.data.count_kind(FeatureKind::Nominal) == 0);
  REQUIRE(fitted.tables.size() == 2);
  CHECK(fitted.tables[0].feature() == "service");
  CHECK(fitted.tables[1].feature() == "protocol_type");
  for (const auto* name : {"service", "protocol_type"}) {
    for (double v : fitted.data.numeric(fitted.data.index_of(name))) {
      CHECK(v > 0.0);
      CHECK(v <= 1.0);
    }
  }
  const auto src = train.index_of("src_bytes");
  CHECK(fitted.data.column(src) == train.column(src));
  CHECK(pmf::apply_tables(fitted.tables, train) == fitted.data);

  const Dataset test = project(synthetic::nsl_kdd_like(100, 22), FeatureSet::mvf().renamed(nsl_kdd_preset_renames()));
  const Dataset mapped = pmf::apply_tables(fitted.tables, test);
  const auto service = test.index_of("service");
  for (std::size_t r = 0; r < test.num_rows(); ++r) {
    CHECK(mapped.numeric(service)[r] == fitted.tables[0].frequency(test.symbol(service, r)));
  }
  CHECK_THROWS_AS(pmf::apply_tables({fitted.tables[0]}, test), error);
}

TEST_CASE("streaming windows") {
  const std::vector<FeatureKind> kinds{FeatureKind::Numeric, FeatureKind::Nominal};
  std::vector<pmf::Record> records;
  for (std::size_t i = 0; i < kProtocols.size(); ++i) records.push_back({static_cast<double>(i), kProtocols[i]});

  const auto out = pmf::stream_map(records, kinds, 9);
  REQUIRE(out.size() == 9);
  const auto table = pmf::fit(kProtocols);
  for (std::size_t i = 0; i < 9; ++i) {
    CHECK(out[i][0] == static_cast<double>(i));
    CHECK(out[i][1] == table.frequency(kProtocols[i]));
  }

  for (const auto& row : pmf::stream_map(records, kinds, 1)) CHECK(row[1] == 1.0);

  // Windows of 4: {TCP,UDP,UDP,UDP}, {RTP,RTP,ICMP,TCP}, {TCP}.
  const auto windows = pmf::stream_map(records, kinds, 4);
  REQUIRE(windows.size() == 9);
  for (std::size_t start = 0; start < 9; start += 4) {
    const std::size_t end = std::min<std::size_t>(start + 4, 9);
    const std::vector<std::string> part(kProtocols.begin() + static_cast<long>(start),
                                        kProtocols.begin() + static_cast<long>(end));
    const auto t = pmf::fit(part);
    for (std::size_t i = start; i < end; ++i) CHECK(windows[i][1] == t.frequency(kProtocols[i]));
  }

  pmf::StreamMapper mapper(kinds, 3);
  CHECK(mapper.push(records[0]).empty());
  CHECK(mapper.push(records[1]).empty());
  CHECK(mapper.push(records[2]).size() == 3);
  CHECK(mapper.buffered() == 0);
  CHECK(mapper.push(records[3]).empty());
  CHECK(mapper.flush().size() == 1);
  CHECK(mapper.flush().empty());
  CHECK_THROWS_AS(mapper.push({1.0}), error);
  CHECK_THROWS_AS(mapper.push({std::string("x"), std::string("y")}), error);
  CHECK_THROWS_AS(pmf::StreamMapper(kinds, 0), error);
}

TEST_CASE("table persistence") {
  std::vector<pmf::PmfTable> tables{pmf::fit(kProtocols, "protocol_type"),
                                    pmf::fit(std::vector<std::string>{"a b", "a b", "c"}, "svc name")};
  std::stringstream s;
  pmf::write_tables(tables, s);
  CHECK(pmf::read_tables(s) == tables);

  std::stringstream bad("# M=3\nf\ta\t1\t0.5\n");
  CHECK_THROWS_AS(pmf::read_tables(bad), error);
  std::stringstream tab;
  CHECK_THROWS_AS(pmf::write_tables({pmf::fit(std::vector<std::string>{"a\tb"}, "f")}, tab), error);
}
