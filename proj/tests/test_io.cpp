#include <doctest.h>

#include <random>
#include <sstream>

#include "fixtures.hpp"
#include "netprep/error.hpp"
#include "netprep/io.hpp"

using namespace netprep;

namespace {

Dataset parse(const std::string& text) {
  std::istringstream in(text);
  return io::read_arff(in);
}

std::size_t error_line(const std::string& text) {
  try {
    parse(text);
  } catch (const parse_error& e) {
    return e.line();
  }
  return 0;
}

}  // namespace

TEST_CASE("arff: header only gives an empty dataset") {
  const Dataset d = parse("@relation r\n@attribute duration numeric\n@attribute class {normal,anomaly}\n@data\n");
  CHECK(d.num_rows() == 0);
  CHECK(d.num_features() == 1);
  CHECK(d.name() == "r");
}

TEST_CASE("arff: small nominal file") {
  const Dataset d = parse(
      "@relation r\n@attribute protocol_type {tcp,udp}\n@attribute class {normal,anomaly}\n@data\n"
      "tcp,normal\nudp,anomaly\n");
  CHECK(d.num_rows() == 2);
  CHECK(d.descriptor(0).kind == FeatureKind::Nominal);
  CHECK(d.descriptor(0).domain == std::vector<std::string>{"tcp", "udp"});
  CHECK(std::vector<ClassLabel>(d.labels().begin(), d.labels().end()) ==
        std::vector<ClassLabel>{ClassLabel::Normal, ClassLabel::Anomaly});
}

TEST_CASE("arff: comments, case and quoting") {
  const Dataset d = parse(
      "% leading comment\n@RELATION 'my data'\n\n@Attribute 'src bytes' REAL\n@attribute svc {'a b', \"x,y\"}\n"
      "@attribute Class {normal, neptune}\n@DATA\n% row comment\n1.5e3, 'a b', neptune\n-2 ,\"x,y\",normal\r\n");
  CHECK(d.name() == "my data");
  CHECK(d.descriptor(0).name == "src bytes");
  CHECK(d.numeric(0)[0] == 1500.0);
  CHECK(d.numeric(0)[1] == -2.0);
  CHECK(d.symbol(1, 1) == "x,y");
  CHECK(d.labels()[0] == ClassLabel::Anomaly);
}

TEST_CASE("arff: class need not be last") {
  const Dataset d = parse("@relation r\n@attribute class {normal,anomaly}\n@attribute a numeric\n@data\nanomaly,3\n");
  CHECK(d.num_features() == 1);
  CHECK(d.labels()[0] == ClassLabel::Anomaly);
}

TEST_CASE("arff: errors carry line numbers") {
  const std::string head = "@relation r\n@attribute a numeric\n@attribute p {tcp}\n@attribute class {normal,anomaly}\n@data\n";
  CHECK(error_line(head + "1,tcp,normal\nx,tcp,normal\n") == 7);
  CHECK(error_line(head + "1,udp,normal\n") == 6);
  CHECK(error_line(head + "1,tcp\n") == 6);
  CHECK(error_line(head + "?,tcp,normal\n") == 6);
  CHECK(error_line(head + "{0 1}\n") == 6);
  CHECK(error_line("@relation r\n@attribute a numeric\n@attribute a numeric\n") == 3);
  CHECK(error_line("@relation r\n@attribute a date\n") == 2);
  CHECK_THROWS_AS(parse("@relation r\n@attribute a numeric\n@attribute class {normal}\n"), parse_error);
  CHECK_THROWS_AS(parse("@relation r\n@attribute a numeric\n@data\n"), parse_error);
  CHECK_THROWS_AS(parse("@relation r\n@attribute a numeric\n@attribute class numeric\n@data\n"), parse_error);
}

TEST_CASE("arff: writer output") {
  const Dataset d = DatasetBuilder("demo")
                        .nominal("protocol_type", {"tcp", "udp"}, {"udp"})
                        .numeric("src_bytes", {0.1})
                        .labels({ClassLabel::Anomaly})
                        .build();
  std::ostringstream out;
  io::write_arff(d, out);
  CHECK(out.str() ==
        "@relation demo\n\n@attribute protocol_type {tcp,udp}\n@attribute src_bytes numeric\n"
        "@attribute class {normal,anomaly}\n\n@data\nudp,0.1,anomaly\n");

  std::ostringstream empty;
  io::write_arff(DatasetBuilder("e").numeric("a", {}).build(), empty);
  CHECK(empty.str().ends_with("@data\n"));
}

TEST_CASE("arff: round trip of awkward datasets") {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 40; ++i) {
    const Dataset d = fixtures::awkward_mixed(rng);
    std::stringstream s;
    io::write_arff(d, s);
    CHECK(io::read_arff(s) == d);
  }
}

TEST_CASE("csv: reading with a schema") {
  const std::vector<FeatureDescriptor> schema{{"duration", 0, FeatureKind::Numeric, {}},
                                              {"protocol_type", 1, FeatureKind::Nominal, {"tcp", "udp"}}};
  std::istringstream one("0,tcp,normal\n");
  const Dataset d = io::read_csv(one, schema);
  CHECK(d.num_rows() == 1);
  CHECK(d.symbol(1, 0) == "tcp");

  std::istringstream empty("");
  CHECK(io::read_csv(empty, schema).num_rows() == 0);

  std::istringstream trailing("0,tcp,normal,21\n\n3,udp,smurf,18\n");
  const Dataset t = io::read_csv(trailing, schema, {.name = "kdd", .ignored_trailing = 1});
  CHECK(t.num_rows() == 2);
  CHECK(t.labels()[1] == ClassLabel::Anomaly);
  CHECK(t.name() == "kdd");

  std::istringstream bad_symbol("0,icmp,normal\n");
  CHECK_THROWS_AS(io::read_csv(bad_symbol, schema), parse_error);
  std::istringstream bad_width("0,tcp\n");
  CHECK_THROWS_AS(io::read_csv(bad_width, schema), parse_error);
  std::istringstream missing("?,tcp,normal\n");
  CHECK_THROWS_AS(io::read_csv(missing, schema), parse_error);
}

TEST_CASE("csv: quoted fields and round trip") {
  const std::vector<FeatureDescriptor> schema{{"note", 0, FeatureKind::Nominal, {"a,b", "say \"hi\"", "two\nlines"}}};
  std::istringstream in("\"a,b\",normal\n\"say \"\"hi\"\"\",anomaly\n\"two\nlines\",normal\n");
  const Dataset d = io::read_csv(in, schema);
  CHECK(d.num_rows() == 3);
  CHECK(d.symbol(0, 2) == "two\nlines");

  std::mt19937_64 rng(32);
  for (int i = 0; i < 40; ++i) {
    const Dataset r = fixtures::awkward_mixed(rng);
    std::stringstream s;
    io::write_csv(r, s);
    CHECK(io::read_csv(s, r.descriptors(), {.name = r.name()}) == r);
  }
}
