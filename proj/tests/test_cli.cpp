#include <doctest.h>

#include "stern/cli.hpp"
#include "stern/enumeration.hpp"

#include <json.hpp>

#include <set>
#include <sstream>

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = stern::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("cli basic values") {
  CHECK(run({"stern", "11"}).out == "5\n");
  CHECK(run({"index", "5", "2"}).out == "11\n");
  CHECK(run({"minpoly", "--d", "3"}).out == "0\t4\t-4\t1\t-2\t1\n");
  CHECK(run({"row", "3", "0", "1"}).out == "0\t1\t1\t2\t1\t3\t2\t3\t1\n");
  CHECK(run({"row", "2"}).out == "1\t3\t2\t3\t1\n");
  CHECK(run({"ratio", "3", "--row"}).out == "1/4\t4/3\t3/5\t5/2\t2/5\t5/3\t3/4\t4/1\n");
  CHECK(run({"ratio", "11"}).out == "5/2\n");
  CHECK(run({"pair", "11"}).out == "5\t2\n");
  CHECK(run({"rational", "9"}).out == "4/3\n");
  CHECK(run({"cfrac", "5", "2"}).out == "2\t1\t1\n");
  CHECK(run({"brocot", "2"}).out == "0/1\t1/2\t1/1\t2/1\tinf\n");
  CHECK(run({"block", "3", "1", "3"}).out == "5\n");
  CHECK(run({"t3zero", "3"}).out == "3\n");
  CHECK(run({"hyperbinary", "--d", "3", "--n", "4"}).out == "3\n");
  CHECK(run({"tcount", "--d", "3", "--i", "0", "--N", "8"}).out == "3\n");
  CHECK(run({"count", "--d", "3", "--gamma", "1", "0", "--from", "4", "--to", "8"}).out == "1\n");
  CHECK(run({"smod", "--d", "3", "11"}).out == "2\t2\n");
  CHECK(run({"density", "--d", "3", "--i", "1"}).out == "3/8\n");
  CHECK(run({"indexI", "--d", "22"}).out == "36\n");
  CHECK(run({"delta3", "--N", "4"}).out == "1\n");
  CHECK(run({"delta3class", "0"}).out == "0\t0\n");
  CHECK(run({"a3", "--limit", "30"}).out == "0\t5\t7\t10\t14\t20\t28\n");
  CHECK(run({"a3member", "33"}).out == "true\n");
  CHECK(run({"parity", "6"}).out == "even\n");
  CHECK(run({"rowsum", "3"}).out == "row\t23/2\nprefix\t9/1\n");
  CHECK(run({"reverse", "11"}).out == "value\t13\ndropped_trailing_zeros\tfalse\n");
  CHECK(run({"minkowski", "1", "3"}).out == "value\t1/4\nnumerator\t1\nexponent\t2\n");
  CHECK(run({"decompose", "13"}).out ==
        "exponent\tmultiplier\tbegin\tend\n3\t0\t0\t8\n2\t2\t8\t12\n0\t12\t12\t13\n");
  CHECK(run({"pairs", "--d", "2"}).out == "i\tj\n0\t1\n1\t0\n1\t1\n");
  CHECK(run({"paircounts", "--d", "6"}).out.rfind("total\t24\n", 0) == 0);
  CHECK(run({"adjacency", "--d", "2"}).code == 0);
  CHECK(run({"walks", "--d", "3", "--r", "0"}).out.rfind("1\t0\t0\t0\t0\t0\t0\t0\n", 0) == 0);
  CHECK(run({"sum", "--N", "8", "--exact"}).out.find("sum\t9/1\n") != std::string::npos);
  CHECK(run({"alpha", "--t", "1", "--N", "1024"}).out.find("status\tempirical") != std::string::npos);
  CHECK(run({"a3row", "6"}).out == "recurrence\t18\nclosed_form\t18\n");
}

TEST_CASE("cli graph output") {
  const Run table = run({"graph", "--d", "2"});
  CHECK(table.out == "pair\tL\tR\n(0,1)\t(0,1)\t(1,1)\n(1,0)\t(1,1)\t(1,0)\n(1,1)\t(1,0)\t(0,1)\n");
  const Run dot = run({"graph", "--d", "3", "--dot"});
  CHECK(dot.code == 0);
  CHECK(dot.out.rfind("digraph", 0) == 0);
  CHECK(dot.out == run({"graph", "--d", "3", "--dot"}).out);
}

TEST_CASE("cli json envelope") {
  const Run r = run({"--format", "json", "minpoly", "--d", "3"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["format_version"] == 1);
  CHECK(j["command"] == "minpoly");
  CHECK(j["params"]["d"] == "3");
  CHECK(j["result"] == nlohmann::json::array({"0", "4", "-4", "1", "-2", "1"}));
  // Big integers are decimal strings.
  const auto big = nlohmann::json::parse(run({"--format", "json", "stern", "1267650600228229401496703205377"}).out);
  CHECK(big["result"] == "101");
  CHECK(run({"spectral", "--d", "3", "--format", "json"}).code == 0);
  const auto dist = nlohmann::json::parse(run({"--format", "json", "dist", "--d", "3", "--N", "64"}).out);
  CHECK(dist["result"]["rows"].size() == 3);
  CHECK(dist["result"]["pair_counts"].size() == 8);
}

TEST_CASE("cli determinism") {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"spectral", "--d", "5"},
           {"--format", "json", "dist", "--d", "5", "--N", "100000"},
           {"--threads", "3", "tcount", "--d", "7", "--i", "2", "--N", "500000", "--strategy", "scan"}}) {
    const Run a = run(args);
    const Run b = run(args);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
  }
  CHECK(run({"--threads", "3", "tcount", "--d", "7", "--i", "2", "--N", "500000", "--strategy", "scan"}).out ==
        run({"tcount", "--d", "7", "--i", "2", "--N", "500000", "--strategy", "blocks"}).out);
}

TEST_CASE("cli exit codes") {
  using namespace stern::cli;
  const Run none = run({});
  CHECK(none.code == kUsage);
  CHECK(none.out.empty());
  CHECK(run({"frobnicate"}).code == kUsage);
  CHECK(run({"stern"}).code == kUsage);
  CHECK(run({"stern", "abc"}).code == kUsage);
  CHECK(run({"--format", "xml", "stern", "3"}).code == kUsage);
  CHECK(run({"help"}).code == kUsage);
  CHECK(run({"--help"}).code == kOk);
  const Run domain = run({"rational", "0"});
  CHECK(domain.code == kDomain);
  CHECK(domain.out.empty());
  CHECK_FALSE(domain.err.empty());
  CHECK(run({"pairs", "--d", "1"}).code == kDomain);
  CHECK(run({"index", "3", "0"}).code == kDomain);
  CHECK(run({"minkowski", "3", "2"}).code == kDomain);
  CHECK(run({"row", "25"}).code == kResource);
  CHECK(run({"--max-row-bits", "4", "row", "4"}).code == kResource);
  CHECK(run({"--max-row-bits", "5", "row", "4"}).code == kOk);
  CHECK(run({"--max-matrix-order", "10", "adjacency", "--d", "5"}).code == kResource);
  CHECK(run({"--max-exact-N", "10", "sum", "--N", "11", "--exact"}).code == kResource);
  CHECK(run({"sum", "--N", "11", "--exact"}).code == kOk);
  CHECK(run({"verify", "--suite", "nonsense"}).code == kUsage);
}

TEST_CASE("cli verify") {
  const Run r = run({"verify", "--suite", "enumeration"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("suite\tpassed\tfailed\nenumeration\t", 0) == 0);
  CHECK(r.out.find("\t0\n") != std::string::npos);
}

TEST_CASE("every operation maps to exactly one subcommand") {
  const std::vector<std::string> operations = {
      "stern", "stern_pair", "stern_ratio", "diatomic_row", "stern_block", "block_decompose",
      "rational_of_index", "to_odd_cfrac", "index_of_rational", "reverse_bits", "brocot_row",
      "minkowski_q", "feasible_pairs", "pair_counts", "s_mod_pair", "graph", "adjacency",
      "walk_counts", "count_block", "count_T", "density", "index_I", "minimal_polynomial",
      "spectral", "graph_export", "even_stern_index", "a3_member", "a3_enumerate", "a3_row_count",
      "t3_zero_closed", "delta3", "delta3_classify", "hyperbinary", "row_sum", "prefix_row_sum",
      "t_prefix_sum", "alpha_estimate"};
  std::multiset<std::string> exposed;
  std::set<std::string> names;
  for (const auto& info : stern::cli::command_table()) {
    CHECK(names.insert(info.name).second);
    for (const auto& op : info.operations) exposed.insert(op);
  }
  for (const auto& op : operations) {
    CAPTURE(op);
    CHECK(exposed.count(op) == 1);
  }
  // Every table entry is a live subcommand.
  for (const auto& info : stern::cli::command_table()) {
    if (info.name == "verify") continue;  // every argument has a default
    CAPTURE(info.name);
    CHECK(run({info.name}).code != 0);  // missing arguments or a usage error, never a crash
  }
}
