#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "fmaxwell/errors.hpp"
#include "fmaxwell/text_io.hpp"

using namespace fmaxwell;

TEST_CASE("format_number") {
  CHECK(format_number(0.5, 12) == "0.5");
  CHECK(format_number(1.0 / 3.0, 6) == "0.333333");
  CHECK(format_number(1e-20, 12) == "1e-20");
  CHECK(format_number(-2.0, 17) == "-2");
}

TEST_CASE("output spec") {
  CHECK_NOTHROW(validate(OutputSpec{}));
  CHECK_THROWS_AS(validate(OutputSpec{OutputFormat::CSV, "-", 5}), DomainError);
  CHECK_THROWS_AS(validate(OutputSpec{OutputFormat::CSV, "-", 18}), DomainError);
}

TEST_CASE("csv write and read") {
  const CsvTable t{{"t", "nu=0.5"}, {{0.0, 1.0, 2.0}, {1.0, 0.5, 0.25}}};
  std::ostringstream out;
  write_csv(out, t, 12);
  CHECK(out.str() == "t,nu=0.5\n0,1\n1,0.5\n2,0.25\n");

  std::istringstream in(out.str());
  const CsvTable back = read_csv(in);
  CHECK(back.header == t.header);
  CHECK(back.columns == t.columns);

  std::istringstream ragged("a,b\n1,2\n3\n");
  CHECK_THROWS_AS(read_csv(ragged), ParseError);
  std::istringstream junk("a\nxyz\n");
  CHECK_THROWS_AS(read_csv(junk), ParseError);

  CHECK_THROWS_AS(write_csv(out, CsvTable{{"a", "b"}, {{1.0}, {1.0, 2.0}}}, 12), DomainError);
}

TEST_CASE("csv round trip is byte-identical at fixed precision") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> mantissa(-1.0, 1.0);
  std::uniform_int_distribution<int> exponent(-30, 30);
  for (int precision : {6, 12, 15, 17}) {
    CsvTable t{{"a", "b", "c"}, std::vector<std::vector<double>>(3)};
    for (int i = 0; i < 200; ++i) {
      for (auto& col : t.columns) col.push_back(mantissa(rng) * std::pow(10.0, exponent(rng)));
    }
    std::ostringstream first;
    write_csv(first, t, precision);
    std::istringstream in(first.str());
    std::ostringstream second;
    write_csv(second, read_csv(in), precision);
    CAPTURE(precision);
    CHECK(first.str() == second.str());
  }
}

TEST_CASE("key-value lines") {
  std::ostringstream out;
  write_key_values(out, {{"value", "1"}, {"regime", "series"}});
  CHECK(out.str() == "value=1\nregime=series\n");
}
