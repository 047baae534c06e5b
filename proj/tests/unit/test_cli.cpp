#include <gtest/gtest.h>

#include <sstream>

#include "cliffpair/cli.hpp"
#include "cliffpair/quadpairs.hpp"
#include "oracles.hpp"

using namespace cliffpair;

namespace {

struct CliRun {
  int code;
  std::string out, err;
};

CliRun run(const std::vector<std::string>& args) {
  std::ostringstream o, e;
  const int code = run_cli(args, o, e);
  return {code, o.str(), e.str()};
}

bool has_line(const std::string& text, const std::string& line) {
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);)
    if (l == line) return true;
  return false;
}

}  // namespace

TEST(Cli, SplitList) {
  EXPECT_EQ(split_list("[1, [g,1], t/(t+1)]"), (std::vector<std::string>{"1", "[g,1]", "t/(t+1)"}));
  EXPECT_TRUE(split_list("[]").empty());
  EXPECT_THROW(split_list("1,2"), InputError);
  EXPECT_THROW(split_list("[[1,2]"), InputError);
  EXPECT_THROW(split_list("[1,,2]"), InputError);
}

TEST(Cli, ParseMatrix) {
  const Field f = gf4();
  const Mat rows = parse_matrix(f, "[[1,g],[0,g^2]]");
  const Mat flat = parse_matrix(f, "[1,g,0,g+1]");
  EXPECT_EQ(rows, flat);
  EXPECT_EQ(rows(1, 1), f.from_bits(3));
  EXPECT_EQ(matrix_literal(rows), "[[1,g],[0,g+1]]");
  EXPECT_EQ(parse_matrix(f, matrix_literal(rows)), rows);
  EXPECT_EQ(parse_matrix(f, "identity:3").rows(), 3);
  EXPECT_EQ(parse_matrix(f, "identity").rows(), 8);
  EXPECT_THROW(parse_matrix(f, "[1,0,1]"), InputError);
  EXPECT_THROW(parse_matrix(f, "[[1,0],[1]]"), InputError);
  EXPECT_THROW(parse_matrix(f, "[[1,h],[0,1]]"), InputError);
}

TEST(Cli, ParseForm) {
  const Field f = gf2();
  const QForm q = parse_form(f, std::string("[[1,1],[0,0]]"), std::nullopt);
  EXPECT_EQ(q.dim(), 4);
  // The zero count of [1,1] + H over GF(2): anisotropic plane plus a hyperbolic one.
  EXPECT_EQ(oracle::arf_by_counting(q.gram(), 2), 1);
  const QForm g = parse_form(f, std::nullopt, std::string("gram=[[1,1],[0,1]]"));
  EXPECT_EQ(oracle::arf_by_counting(g.gram(), 2), 1);
  EXPECT_EQ(parse_form(f, std::string("blocks=[[1,1]]"), std::nullopt).gram(), g.gram());
  EXPECT_THROW(parse_form(f, std::nullopt, std::nullopt), InputError);
  EXPECT_THROW(parse_form(f, std::string("[[1,1]]"), std::string("[[1,1],[0,1]]")), InputError);
  EXPECT_THROW(parse_form(f, std::nullopt, std::string("[[1,1],[1,1]]")), InputError);  // lower entry
  EXPECT_THROW(parse_form(f, std::nullopt, std::string("[[1,0],[0,1]]")), InputError);  // singular polar form
  EXPECT_THROW(parse_form(f, std::string("colour=[[1,1]]"), std::nullopt), InputError);
}

TEST(Cli, ArfExample) {
  const CliRun r = run({"arf", "--field", "gf2", "--blocks", "[[1,1]]", "--format", "kv"});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(has_line(r.out, "arf_class=1"));
  EXPECT_TRUE(has_line(run({"arf", "--blocks", "[[0,1]]", "--format", "kv"}).out, "arf_class=0"));
}

TEST(Cli, ArfOverFunctionField) {
  const CliRun r = run({"arf", "--field", "gf2(t)", "--blocks", "[[t,1/t]]", "--format", "kv"});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(has_line(r.out, "arf_value=1"));
}

TEST(Cli, InvariantsMatchCounting) {
  const CliRun r = run({"invariants", "--field", "gf4", "--blocks", "[[g,g],[1,0],[0,1]]", "--format", "kv"});
  EXPECT_EQ(r.code, 0) << r.err;
  const QForm q = parse_form(gf4(), std::string("[[g,g],[1,0],[0,1]]"), std::nullopt);
  const int arf = oracle::arf_by_counting(q.gram(), 4);
  EXPECT_TRUE(has_line(r.out, "arf_class=" + std::to_string(arf)));
  EXPECT_TRUE(has_line(r.out, "witt_index=" + std::to_string(arf ? 2 : 3)));
  EXPECT_TRUE(has_line(r.out, "disc_equals_arf=ok"));
}

TEST(Cli, CliffordDecomposeExample) {
  const CliRun r = run({"clifford", "--field", "gf4:g^2+g+1", "--blocks", "[[1,1],[g,1],[1,g],[1,1]]", "--decompose",
                     "--format", "kv"});
  EXPECT_EQ(r.code, 0) << r.err;
  // [a_i b_i, a_i a_4) with (a_i, b_i) = (1,1), (g,1), (1,g) and a_4 = 1.
  EXPECT_TRUE(has_line(r.out, "Q1=[1,1)"));
  EXPECT_TRUE(has_line(r.out, "Q2=[g,g)"));
  EXPECT_TRUE(has_line(r.out, "Q3=[g,1)"));
  EXPECT_TRUE(has_line(r.out, "dim=128"));
  EXPECT_TRUE(has_line(r.out, "centre_dim=2"));
  EXPECT_TRUE(has_line(r.out, "components=split"));
}

TEST(Cli, CliffordFull) {
  const CliRun r = run({"clifford", "--full", "--blocks", "[[1,1],[0,1]]", "--decompose", "--format", "kv"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(has_line(r.out, "dim=16"));
  // The symplectic basis is recomputed from the Gram matrix; Q_i = [a_i b_i, a_i) for the reported blocks.
  EXPECT_TRUE(has_line(r.out, "blocks=[1,1] + [1,0]"));
  EXPECT_TRUE(has_line(r.out, "Q1=[1,1)"));
  EXPECT_TRUE(has_line(r.out, "Q2=[0,1)"));
}

TEST(Cli, Semitrace) {
  EXPECT_EQ(run({"semitrace", "--blocks", "[[1,1],[0,0],[0,0],[g,1]]", "--field", "gf4", "-n", "3"}).code, 0);
  EXPECT_EQ(run({"semitrace", "--full", "--blocks", "[[1,1],[0,0],[1,0]]", "-n", "3"}).code, 0);
  EXPECT_EQ(run({"semitrace", "--blocks", "[[1,1],[0,0],[1,0]]"}).code, 2);
}

TEST(Cli, TrialityIdentity) {
  const CliRun r = run({"triality", "--field", "gf2", "--matrix", "identity", "--format", "kv"});
  EXPECT_EQ(r.code, 0) << r.err;
  const std::string id = "[[1,0,0,0,0,0,0,0],[0,1,0,0,0,0,0,0],[0,0,1,0,0,0,0,0],[0,0,0,1,0,0,0,0],"
                         "[0,0,0,0,1,0,0,0],[0,0,0,0,0,1,0,0],[0,0,0,0,0,0,1,0],[0,0,0,0,0,0,0,1]]";
  EXPECT_TRUE(has_line(r.out, "class_t_plus=" + id));
  EXPECT_TRUE(has_line(r.out, "class_t_minus=" + id));
  EXPECT_TRUE(has_line(r.out, "nullity=1"));
  EXPECT_EQ(run({"triality", "--zorn", "--field", "gf4", "--matrix", "identity"}).code, 0);
}

TEST(Cli, TrialityScaledIdentity) {
  // g * id over GF(4): mu = g^2, and the pair is again a pair of scalars.
  std::string m = "[";
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) m += std::string(i || j ? "," : "") + (i == j ? "g" : "0");
  m += "]";
  const CliRun r = run({"triality", "--field", "gf4", "--cayley", "g,1,g", "--matrix", m, "--format", "kv"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(has_line(r.out, "mu=g+1"));
  EXPECT_TRUE(has_line(r.out, "multiplier_identity=ok"));
}

TEST(Cli, ExitCodeTwoOnBadInput) {
  const std::string transvection_1 =  // transvection along the unit: improper
      "[[1,1,0,0,0,0,0,0],[0,1,0,0,0,0,0,0],[0,0,1,0,0,0,0,0],[0,0,0,1,0,0,0,0],"
      "[0,0,0,0,1,0,0,0],[0,0,0,0,0,1,0,0],[0,0,0,0,0,0,1,0],[0,0,0,0,0,0,0,1]]";
  const std::string not_similitude =
      "[[1,0,0,0,0,0,0,0],[0,1,1,0,0,0,0,0],[0,0,1,0,0,0,0,0],[0,0,0,1,0,0,0,0],"
      "[0,0,0,0,1,0,0,0],[0,0,0,0,0,1,0,0],[0,0,0,0,0,0,1,0],[0,0,0,0,0,0,0,1]]";
  const std::vector<std::vector<std::string>> bad{
      {"suite", "bogus"},
      {},
      {"frobnicate"},
      {"arf"},
      {"arf", "--blocks", "[[1]]"},
      {"arf", "--field", "gf3", "--blocks", "[[1,1]]"},
      {"arf", "--blocks", "[[1,1]]", "--gram", "[[1,1],[0,1]]"},
      {"arf", "--gram", "[[1,1],[1,1]]"},
      {"arf", "--blocks", "[[1,1]]", "--format", "json"},
      {"invariants", "--blocks", "[[1,1]]", "--colour", "red"},
      {"suite", "all", "-n", "0"},
      {"triality", "--matrix", "[[1,1],[0,1]]"},
      {"triality", "--matrix", "identity:2"},
      {"triality", "--matrix", transvection_1},
      {"triality", "--matrix", not_similitude},
      {"triality", "--cayley", "1,1", "--matrix", "identity"},
      {"triality", "--cayley", "1,0,1", "--matrix", "identity"},
      {"triple", "--blocks", "[[1,1],[0,0],[0,0],[0,0]]"},
      {"triple", "--blocks", "[[0,0],[0,0]]"},
      {"clifford", "--blocks", "[[1,1]]", "--decompose"},
  };
  for (const auto& args : bad) {
    const CliRun r = run(args);
    std::string joined;
    for (const auto& a : args) joined += a + " ";
    EXPECT_EQ(r.code, 2) << joined << "\n" << r.out << r.err;
  }
}

TEST(Cli, Help) {
  const CliRun r = run({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("triality"), std::string::npos);
}

TEST(Cli, TripleOnHyperbolicForm) {
  const CliRun r = run({"triple", "--blocks", "[[0,0],[0,0],[0,0],[0,0]]", "--format", "kv"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(has_line(r.out, "permutation=ok"));
}

TEST(Cli, SuiteReportIsDeterministic) {
  const CliRun a = run({"suite", "triality", "--seed", "3", "-n", "2", "--format", "kv"});
  const CliRun b = run({"suite", "triality", "--seed", "3", "-n", "2", "--format", "kv"});
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_TRUE(has_line(a.out, "summary properties=5 failed=0 status=pass"));
}
