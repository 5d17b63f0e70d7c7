#include "rmpu/io.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

using namespace rmpu;

TEST(Rational, Parsing) {
  EXPECT_EQ(parse_rational("3/4"), Rational(3, 4));
  EXPECT_EQ(parse_rational("-6/8"), Rational(-3, 4));
  EXPECT_EQ(parse_rational("0.25"), Rational(1, 4));
  EXPECT_EQ(parse_rational("-1.5e-2"), Rational(-3, 200));
  EXPECT_EQ(parse_rational(" 7 "), Rational(7));
  EXPECT_EQ(parse_rational(".5"), Rational(1, 2));
  EXPECT_THROW(parse_rational("1/0"), std::invalid_argument);
  EXPECT_THROW(parse_rational("abc"), std::invalid_argument);
  EXPECT_THROW(parse_rational(""), std::invalid_argument);
  EXPECT_EQ(to_string(Rational(-3, 4)), "-3/4");
  EXPECT_EQ(to_string(Rational(5)), "5");
}

TEST(Moments, JsonFormats) {
  const auto exact = moments_from_json(Json::parse(R"(["1/2", 1, "0.25"])"));
  EXPECT_TRUE(exact.exact);
  EXPECT_EQ(exact.rational[3], Rational(1, 4));
  const auto inexact = moments_from_json(Json::parse(R"({"moments": [0.5, "1/3"]})"));
  EXPECT_FALSE(inexact.exact);
  EXPECT_DOUBLE_EQ(inexact.real[1], 0.5);
  EXPECT_THROW(moments_from_json(Json::parse("[]")), std::invalid_argument);
  EXPECT_THROW(moments_from_json(Json::parse("[true]")), std::invalid_argument);
  EXPECT_EQ(moments_to_json(exact.rational), Json::parse(R"(["1/2", "1", "1/4"])"));
}

TEST(WeingartenCache, RoundTrip) {
  const auto w = weingarten<Rational>(7, 4);
  const Json j = weingarten_to_json(w);
  EXPECT_EQ(j["format"], "rmpu-weingarten");
  const auto back = weingarten_from_json(Json::parse(j.dump()));
  EXPECT_EQ(back.class_values(), w.class_values());
  EXPECT_EQ(back.dim(), 7);
  Json broken = j;
  broken["classes"].erase(0);
  EXPECT_THROW(weingarten_from_json(broken), std::invalid_argument);
  broken = j;
  broken["version"] = 2;
  EXPECT_THROW(weingarten_from_json(broken), std::invalid_argument);
}

TEST(Observable, JsonRoundTrip) {
  ObservableSpec s;
  s.matrix = MatrixXc::Zero(2, 2);
  s.matrix(0, 1) = Complex(0, -0.5);
  s.matrix(1, 0) = Complex(0, 0.5);
  s.first_site = 2;
  s.traceless = true;
  const auto back = observable_from_json(observable_to_json(s));
  EXPECT_EQ(back.matrix, s.matrix);
  EXPECT_EQ(back.first_site, 2);
  EXPECT_TRUE(back.traceless);
  Json bad = observable_to_json(s);
  bad["matrix"][0][1] = Json::array({0.0, 0.5});
  EXPECT_THROW(observable_from_json(bad), std::invalid_argument);
}

TEST(Manifest, ParsingAndHash) {
  const Json j = Json::parse(R"({"schema_version": 1, "quantity": "otoc_rmpu",
      "grid": {"k": [2], "d": [2], "n": [2], "chi": [2, 4]}, "seed": 5, "samples": 10})");
  const auto m = parse_manifest(j);
  EXPECT_EQ(m.axis("chi"), (std::vector<std::int64_t>{2, 4}));
  EXPECT_EQ(m.seed, 5u);
  EXPECT_EQ(m.hash.size(), 16u);
  EXPECT_EQ(parse_manifest(Json::parse(j.dump())).hash, m.hash);
  Json changed = j;
  changed["seed"] = 6;
  EXPECT_NE(parse_manifest(changed).hash, m.hash);
  EXPECT_THROW(m.axis("D"), std::invalid_argument);
  for (const char* text : {R"({"schema_version": 2, "quantity": "otoc_rmpu"})",
                           R"({"schema_version": 1, "quantity": "nope"})",
                           R"({"schema_version": 1, "quantity": "otoc_rmpu", "grid": {"q": [1]}})",
                           R"({"schema_version": 1, "quantity": "otoc_rmpu", "grid": {"k": [0]}})",
                           R"({"schema_version": 1, "quantity": "otoc_rmpu", "seed": -1})"}) {
    EXPECT_THROW(parse_manifest(Json::parse(text)), std::invalid_argument) << text;
  }
}

TEST(Manifest, Fnv1aReferenceValues) {
  EXPECT_EQ(fnv1a64(""), 0xcbf29ce484222325ull);
  EXPECT_EQ(fnv1a64("a"), 0xaf63dc4c8601ec8cull);
  EXPECT_EQ(hex64(0xabcull), "0000000000000abc");
}

TEST(Manifest, ProvenanceHeader) {
  const std::string h = provenance_header("00ff", 9);
  EXPECT_NE(h.find("manifest_hash=00ff"), std::string::npos);
  EXPECT_NE(h.find("seed=9"), std::string::npos);
  EXPECT_NE(h.find(std::string("rmpu_version=") + RMPU_VERSION), std::string::npos);
}
