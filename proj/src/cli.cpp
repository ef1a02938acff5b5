#include "stern/cli.hpp"

#include "stern/enumeration.hpp"
#include "stern/modular.hpp"
#include "stern/partial_sums.hpp"
#include "stern/sequence.hpp"
#include "stern/small_d.hpp"
#include "stern/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <functional>
#include <map>
#include <ostream>

namespace stern::cli {

namespace {

using Json = nlohmann::ordered_json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A handler's result in both renderings.
struct Output {
  Json result;
  std::string tsv;
};

std::string str(const Int& n) { return n.str(); }
std::string str(std::uint64_t n) { return std::to_string(n); }
std::string str(const PosRational& x) { return x.str(); }

std::string str(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string join(const std::vector<std::string>& fields) {
  std::string line;
  for (std::size_t k = 0; k < fields.size(); ++k) {
    if (k > 0) line += '\t';
    line += fields[k];
  }
  return line + '\n';
}

template <class T>
std::vector<std::string> strings(const std::vector<T>& values) {
  std::vector<std::string> out;
  out.reserve(values.size());
  for (const auto& v : values) out.push_back(str(v));
  return out;
}

Output scalar(const std::string& value) { return {Json(value), value + '\n'}; }

Output list(const std::vector<std::string>& values) { return {Json(values), join(values)}; }

// Ordered key/value record; TSV puts one pair per line.
class Record {
 public:
  Record& add(const std::string& key, const std::string& value) {
    json_[key] = value;
    tsv_ += key + '\t' + value + '\n';
    return *this;
  }
  Record& add(const std::string& key, Json value, const std::string& tsv_value) {
    json_[key] = std::move(value);
    tsv_ += key + '\t' + tsv_value + '\n';
    return *this;
  }
  Output done() { return {std::move(json_), std::move(tsv_)}; }

 private:
  Json json_ = Json::object();
  std::string tsv_;
};

// Header plus rows; JSON is an array of objects keyed by the header.
class Table {
 public:
  explicit Table(std::vector<std::string> header) : header_(std::move(header)) {
    tsv_ = join(header_);
  }
  void row(const std::vector<std::string>& fields) {
    Json obj = Json::object();
    for (std::size_t k = 0; k < header_.size(); ++k) obj[header_[k]] = fields[k];
    json_.push_back(std::move(obj));
    tsv_ += join(fields);
  }
  Output done() { return {std::move(json_), std::move(tsv_)}; }

 private:
  std::vector<std::string> header_;
  Json json_ = Json::array();
  std::string tsv_;
};

std::string pair_label(const ResiduePair& p) {
  return "(" + std::to_string(p.i) + "," + std::to_string(p.j) + ")";
}

Output matrix_output(const PairGraph& g, const IntMatrix& m) {
  Json labels = Json::array();
  for (const auto& v : g.vertices()) labels.push_back(pair_label(v));
  Json rows = Json::array();
  std::string tsv;
  for (Eigen::Index a = 0; a < m.rows(); ++a) {
    std::vector<std::string> row;
    for (Eigen::Index b = 0; b < m.cols(); ++b) row.push_back(str(m(a, b)));
    rows.push_back(row);
    tsv += join(row);
  }
  Json result = Json::object();
  result["vertices"] = std::move(labels);
  result["matrix"] = std::move(rows);
  return {std::move(result), std::move(tsv)};
}

Nat nat_arg(const std::string& text, const std::string& name) {
  try {
    return parse_nat(text);
  } catch (const DomainError&) {
    throw UsageError(name + ": expected a nonnegative integer, got '" + text + "'");
  }
}

PosRational fraction_arg(const std::string& p, const std::string& q) {
  const Nat den = nat_arg(q, "Q");
  if (den == 0) throw DomainError("Q must be positive");
  return PosRational(nat_arg(p, "P"), den);
}

CountStrategy strategy_arg(const std::string& s) {
  if (s == "scan") return CountStrategy::Scan;
  if (s == "blocks") return CountStrategy::Blocks;
  return CountStrategy::Auto;
}

struct Globals {
  std::string format = "tsv";
  unsigned threads = 1;
  unsigned max_row_bits = kDefaultRowBits;
  std::size_t max_matrix_order = kDefaultMatrixOrder;
  std::string max_exact_n = std::to_string(kDefaultMaxExactN);
};

// Values bound by whichever subcommand is selected.
struct Args {
  std::string n, p, q, a = "1", b = "1", k, big_n, limit, from, to;
  std::string strategy = "auto";
  std::string suite = "all";
  unsigned r = 0;
  unsigned t = 1;
  Modulus d = 2;
  Modulus i = 0;
  Modulus ra = 1;
  Modulus rb = 4;
  std::vector<Modulus> gamma;
  bool dot = false;
  bool trace = false;
  bool exact = false;
  bool row = false;
};

}  // namespace

const std::vector<CommandInfo>& command_table() {
  static const std::vector<CommandInfo> table = {
      {"stern", "s(N)", {"stern"}},
      {"pair", "(s(N), s(N+1))", {"stern_pair"}},
      {"ratio", "t(N) = s(N)/s(N+1); with --row, t(2^N .. 2^(N+1)-1)", {"stern_ratio"}},
      {"row", "diatomic row Z(R,k;A,B), k = 0..2^R", {"diatomic_row"}},
      {"block", "s(2^R N + K) through the block identity", {"stern_block"}},
      {"decompose", "dyadic blocks tiling [0, N)", {"block_decompose"}},
      {"rational", "N-th positive rational of the Stern enumeration", {"rational_of_index"}},
      {"index", "enumeration index of P/Q", {"index_of_rational"}},
      {"cfrac", "odd-length continued fraction of P/Q >= 1", {"to_odd_cfrac"}},
      {"reverse", "bit reversal of N", {"reverse_bits"}},
      {"brocot", "Stern-Brocot row R", {"brocot_row"}},
      {"minkowski", "?(P/Q) for 0 <= P/Q <= 1", {"minkowski_q"}},
      {"pairs", "feasible residue pairs mod d", {"feasible_pairs"}},
      {"paircounts", "N_d and N_d(i)", {"pair_counts"}},
      {"smod", "S_d(N)", {"s_mod_pair"}},
      {"graph", "walk graph G_d, as a table or DOT", {"graph", "graph_export"}},
      {"adjacency", "adjacency matrix M_d", {"adjacency"}},
      {"walks", "M_d^r", {"walk_counts"}},
      {"count", "B(gamma; U1, U2)", {"count_block"}},
      {"tcount", "T(N; d, i)", {"count_T"}},
      {"density", "limiting density r_{d,i}", {"density"}},
      {"indexI", "I(d)", {"index_I"}},
      {"dist", "T(N; d, i) for every i with densities and deviations", {"dist_table"}},
      {"minpoly", "minimal polynomial of M_d, ascending coefficients", {"minimal_polynomial"}},
      {"spectral", "roots of the minimal polynomial, rho_d, sigma_d, tau_d", {"spectral"}},
      {"parity", "parity of s(N)", {"even_stern_index"}},
      {"a3member", "whether 3 divides s(N)", {"a3_member"}},
      {"a3", "members of A3 below a limit", {"a3_enumerate"}},
      {"a3row", "a_r by recurrence and closed form", {"a3_row_count", "a3_row_count_closed"}},
      {"t3zero", "T(2^R; 3, 0) by the closed form", {"t3_zero_closed"}},
      {"delta3", "Delta(N) = T(N;3,1) - T(N;3,2)", {"delta3"}},
      {"delta3class", "predicted (Delta(2M), Delta(2M+1))", {"delta3_classify"}},
      {"delta3freq", "frequencies of Delta(n) over n < N", {"delta3_frequencies"}},
      {"hyperbinary", "b(d; n)", {"hyperbinary"}},
      {"rowsum", "A(R) and the prefix sum up to 2^R", {"row_sum", "prefix_row_sum"}},
      {"sum", "sum_{n<N} t(n) with its bounds", {"t_prefix_sum"}},
      {"alpha", "(1/N) sum_{n<N} s(n)/s(n+t)", {"alpha_estimate"}},
      {"diffrange", "extremes of T(N;d,a) - T(N;d,b) over N <= limit", {"residue_difference_range"}},
      {"verify", "run a named invariant suite", {"run_suite"}},
  };
  return table;
}

namespace {

using Handler = std::function<Output()>;

// Registers every subcommand's arguments and returns the handlers by name.
std::map<std::string, Handler> build(CLI::App& app, Args& x, const Globals& g,
                                     std::map<std::string, CLI::App*>& subs) {
  for (const auto& info : command_table()) {
    subs[info.name] = app.add_subcommand(info.name, info.summary);
  }
  auto opt_n = [&](const std::string& cmd, std::string& slot, const std::string& name) {
    subs[cmd]->add_option(name, slot)->required();
  };
  auto opt_d = [&](const std::string& cmd) { subs[cmd]->add_option("--d", x.d, "modulus")->required(); };

  std::map<std::string, Handler> h;

  opt_n("stern", x.n, "N");
  h["stern"] = [&] { return scalar(str(stern(nat_arg(x.n, "N")))); };

  opt_n("pair", x.n, "N");
  h["pair"] = [&] {
    const SternPair p = stern_pair(nat_arg(x.n, "N"));
    return list({str(p.left), str(p.right)});
  };

  opt_n("ratio", x.n, "N");
  subs["ratio"]->add_flag("--row", x.row, "treat N as a row exponent");
  h["ratio"] = [&] {
    const Nat n = nat_arg(x.n, "N");
    if (!x.row) return scalar(str(stern_ratio(n)));
    if (n >= g.max_row_bits) {
      throw ResourceError("ratio rows are capped at 2^" + std::to_string(g.max_row_bits) +
                          " entries (--max-row-bits)");
    }
    const auto r = n.convert_to<unsigned>();
    std::vector<std::string> row;
    for (Nat m = pow2(r); m < pow2(r + 1); ++m) row.push_back(str(stern_ratio(m)));
    return list(row);
  };

  subs["row"]->add_option("R", x.r)->required();
  subs["row"]->add_option("A", x.a);
  subs["row"]->add_option("B", x.b);
  h["row"] = [&] {
    return list(strings(diatomic_row(x.r, nat_arg(x.a, "A"), nat_arg(x.b, "B"), g.max_row_bits)));
  };

  subs["block"]->add_option("R", x.r)->required();
  opt_n("block", x.n, "N");
  opt_n("block", x.k, "K");
  h["block"] = [&] { return scalar(str(stern_block(x.r, nat_arg(x.n, "N"), nat_arg(x.k, "K")))); };

  opt_n("decompose", x.n, "N");
  h["decompose"] = [&] {
    Table t({"exponent", "multiplier", "begin", "end"});
    for (const Block& b : block_decompose(nat_arg(x.n, "N"))) {
      t.row({std::to_string(b.exponent), str(b.multiplier), str(b.begin()), str(b.end())});
    }
    return t.done();
  };

  opt_n("rational", x.n, "N");
  h["rational"] = [&] { return scalar(str(rational_of_index(nat_arg(x.n, "N")))); };

  opt_n("index", x.p, "P");
  opt_n("index", x.q, "Q");
  h["index"] = [&] { return scalar(str(index_of_rational(fraction_arg(x.p, x.q)))); };

  opt_n("cfrac", x.p, "P");
  opt_n("cfrac", x.q, "Q");
  h["cfrac"] = [&] { return list(strings(to_odd_cfrac(fraction_arg(x.p, x.q)).quotients)); };

  opt_n("reverse", x.n, "N");
  h["reverse"] = [&] {
    const BitReversal rev = reverse_bits(nat_arg(x.n, "N"));
    return Record()
        .add("value", str(rev.value))
        .add("dropped_trailing_zeros", Json(rev.dropped_trailing_zeros),
             rev.dropped_trailing_zeros ? "true" : "false")
        .done();
  };

  subs["brocot"]->add_option("R", x.r)->required();
  h["brocot"] = [&] {
    std::vector<std::string> row;
    for (const auto& e : brocot_row(x.r, g.max_row_bits)) {
      row.push_back(std::holds_alternative<Infinity>(e) ? "inf" : str(std::get<PosRational>(e)));
    }
    return list(row);
  };

  opt_n("minkowski", x.p, "P");
  opt_n("minkowski", x.q, "Q");
  h["minkowski"] = [&] {
    const DyadicRational v = minkowski_q(fraction_arg(x.p, x.q));
    return Record()
        .add("value", str(v.value()))
        .add("numerator", str(v.numerator))
        .add("exponent", Json(v.exponent), std::to_string(v.exponent))
        .done();
  };

  opt_d("pairs");
  h["pairs"] = [&] {
    const PairCounts counts = pair_counts(x.d);
    if (counts.total > g.max_matrix_order) {
      throw ResourceError("N_d = " + std::to_string(counts.total) +
                          " exceeds --max-matrix-order");
    }
    Table t({"i", "j"});
    for (const auto& p : feasible_pairs(x.d)) t.row({std::to_string(p.i), std::to_string(p.j)});
    return t.done();
  };

  opt_d("paircounts");
  h["paircounts"] = [&] {
    const PairCounts counts = pair_counts(x.d);
    const auto per_row = strings(counts.per_row);
    std::string joined = join(per_row);
    joined.pop_back();
    return Record()
        .add("total", str(counts.total))
        .add("per_row", Json(per_row), joined)
        .done();
  };

  opt_d("smod");
  opt_n("smod", x.n, "N");
  h["smod"] = [&] {
    const ResiduePair p = s_mod_pair(nat_arg(x.n, "N"), x.d);
    return list({std::to_string(p.i), std::to_string(p.j)});
  };

  opt_d("graph");
  subs["graph"]->add_flag("--dot", x.dot, "emit Graphviz DOT");
  h["graph"] = [&]() -> Output {
    if (x.dot) {
      std::string dot = graph_export(x.d, g.max_matrix_order);
      return {Json(dot), dot};
    }
    const PairGraph graph(x.d, g.max_matrix_order);
    Table t({"pair", "L", "R"});
    for (std::size_t v = 0; v < graph.order(); ++v) {
      t.row({pair_label(graph.vertex(v)), pair_label(graph.vertex(graph.left(v))),
             pair_label(graph.vertex(graph.right(v)))});
    }
    return t.done();
  };

  opt_d("adjacency");
  h["adjacency"] = [&] {
    const PairGraph graph(x.d, g.max_matrix_order);
    return matrix_output(graph, adjacency<Int>(graph));
  };

  opt_d("walks");
  subs["walks"]->add_option("--r", x.r, "walk length")->required();
  h["walks"] = [&] {
    const PairGraph graph(x.d, g.max_matrix_order);
    return matrix_output(graph, walk_counts<Int>(x.d, x.r, g.max_matrix_order));
  };

  opt_d("count");
  subs["count"]->add_option("--gamma", x.gamma, "residue pair I J")->expected(2)->required();
  subs["count"]->add_option("--from", x.from, "U1")->required();
  subs["count"]->add_option("--to", x.to, "U2")->required();
  h["count"] = [&] {
    const ResiduePair gamma{x.gamma[0], x.gamma[1], x.d};
    return scalar(str(count_block(x.d, gamma, nat_arg(x.from, "U1"), nat_arg(x.to, "U2"), g.threads)));
  };

  auto add_strategy = [&](const std::string& cmd) {
    subs[cmd]
        ->add_option("--strategy", x.strategy, "scan, blocks or auto")
        ->check(CLI::IsMember({"scan", "blocks", "auto"}));
  };

  opt_d("tcount");
  subs["tcount"]->add_option("--i", x.i, "residue")->required();
  subs["tcount"]->add_option("--N", x.big_n, "N")->required();
  add_strategy("tcount");
  h["tcount"] = [&] {
    return scalar(str(count_T(nat_arg(x.big_n, "N"), x.d, x.i, strategy_arg(x.strategy), g.threads)));
  };

  opt_d("density");
  subs["density"]->add_option("--i", x.i, "residue")->required();
  h["density"] = [&] { return scalar(str(density(x.d, x.i))); };

  opt_d("indexI");
  h["indexI"] = [&] { return scalar(str(index_I(x.d))); };

  opt_d("dist");
  subs["dist"]->add_option("--N", x.big_n, "N")->required();
  add_strategy("dist");
  h["dist"] = [&] {
    const Nat N = nat_arg(x.big_n, "N");
    if (N == 0) throw DomainError("dist needs N >= 1");
    const DistTable dt = dist_table(N, x.d, strategy_arg(x.strategy), g.threads, g.max_matrix_order);
    Table t({"i", "count", "frequency", "density", "deviation"});
    for (Modulus i = 0; i < x.d; ++i) {
      const double freq = Rational(dt.counts[i], N).convert_to<double>();
      const double dev = (Rational(dt.counts[i], N) - dt.densities[i].to_rational()).convert_to<double>();
      t.row({std::to_string(i), str(dt.counts[i]), str(freq), str(dt.densities[i]), str(dev)});
    }
    Output out = t.done();
    const PairGraph graph(x.d, g.max_matrix_order);
    Json pairs = Json::object();
    for (std::size_t v = 0; v < graph.order(); ++v) {
      pairs[pair_label(graph.vertex(v))] = str(dt.pair_counts[v]);
    }
    Json result = Json::object();
    result["rows"] = std::move(out.result);
    result["pair_counts"] = std::move(pairs);
    out.result = std::move(result);
    return out;
  };

  opt_d("minpoly");
  h["minpoly"] = [&] {
    const IntPolynomial f = minimal_polynomial(x.d, g.max_matrix_order);
    return list(strings(f.coefficients()));
  };

  opt_d("spectral");
  h["spectral"] = [&] {
    const SpectralReport rep = spectral(x.d, g.max_matrix_order);
    Json roots = Json::array();
    std::string root_lines;
    for (const Root& root : rep.roots) {
      Json obj = Json::object();
      obj["re"] = root.value.real();
      obj["im"] = root.value.imag();
      obj["modulus"] = std::abs(root.value);
      obj["multiplicity"] = root.multiplicity;
      roots.push_back(std::move(obj));
      root_lines += join({"root", str(root.value.real()), str(root.value.imag()),
                          str(std::abs(root.value)), std::to_string(root.multiplicity)});
    }
    Output out = Record()
                     .add("minimal_polynomial", to_string(rep.minimal_polynomial))
                     .add("rho", Json(rep.rho), str(rep.rho))
                     .add("sigma", Json(rep.sigma), std::to_string(rep.sigma))
                     .add("tau", Json(rep.tau), str(rep.tau))
                     .done();
    out.result["roots"] = std::move(roots);
    out.tsv += root_lines;
    return out;
  };

  opt_n("parity", x.n, "N");
  h["parity"] = [&] { return scalar(even_stern_index(nat_arg(x.n, "N")) ? "even" : "odd"); };

  opt_n("a3member", x.n, "N");
  h["a3member"] = [&]() -> Output {
    const bool member = a3_member(nat_arg(x.n, "N"));
    return {Json(member), member ? "true\n" : "false\n"};
  };

  subs["a3"]->add_option("--limit", x.limit, "exclusive upper bound")->required();
  h["a3"] = [&] { return list(strings(a3_enumerate(nat_arg(x.limit, "limit")))); };

  subs["a3row"]->add_option("R", x.r)->required();
  h["a3row"] = [&] {
    return Record()
        .add("recurrence", str(a3_row_count(x.r)))
        .add("closed_form", str(a3_row_count_closed(x.r)))
        .done();
  };

  subs["t3zero"]->add_option("R", x.r)->required();
  h["t3zero"] = [&] { return scalar(str(t3_zero_closed(x.r))); };

  subs["delta3"]->add_option("--N", x.big_n, "N")->required();
  subs["delta3"]->add_flag("--trace", x.trace, "emit Delta(0), ..., Delta(N)");
  h["delta3"] = [&] {
    const Nat N = nat_arg(x.big_n, "N");
    if (!x.trace) return scalar(str(delta3(N)));
    if (N >= pow2(g.max_row_bits)) {
      throw ResourceError("traces are capped at 2^" + std::to_string(g.max_row_bits) +
                          " entries (--max-row-bits)");
    }
    std::vector<std::string> values;
    for (int v : delta3_trace(N.convert_to<std::uint64_t>())) values.push_back(std::to_string(v));
    return list(values);
  };

  opt_n("delta3class", x.n, "M");
  h["delta3class"] = [&] {
    const auto [even, odd] = delta3_classify(nat_arg(x.n, "M"));
    return list({std::to_string(even), std::to_string(odd)});
  };

  subs["delta3freq"]->add_option("--N", x.big_n, "N")->required();
  h["delta3freq"] = [&] {
    const Nat N = nat_arg(x.big_n, "N");
    if (N > kMaxFloatN) throw ResourceError("delta3freq is capped at N <= 2^40");
    const DeltaFrequencies f = delta3_frequencies(N.convert_to<std::uint64_t>());
    Table t({"value", "count", "frequency"});
    for (std::size_t v = 0; v < f.counts.size(); ++v) {
      const double freq = f.total == 0 ? 0.0 : static_cast<double>(f.counts[v]) / static_cast<double>(f.total);
      t.row({std::to_string(v), str(f.counts[v]), str(freq)});
    }
    const double out_freq = f.total == 0 ? 0.0 : static_cast<double>(f.outside) / static_cast<double>(f.total);
    t.row({"other", str(f.outside), str(out_freq)});
    return t.done();
  };

  opt_d("hyperbinary");
  subs["hyperbinary"]->add_option("--n", x.n, "n")->required();
  h["hyperbinary"] = [&] { return scalar(str(hyperbinary(x.d, nat_arg(x.n, "n")))); };

  subs["rowsum"]->add_option("R", x.r)->required();
  h["rowsum"] = [&] {
    return Record().add("row", str(row_sum(x.r))).add("prefix", str(prefix_row_sum(x.r))).done();
  };

  subs["sum"]->add_option("--N", x.big_n, "N")->required();
  subs["sum"]->add_flag("--exact", x.exact, "exact rational sum");
  h["sum"] = [&] {
    const SumReport rep = t_prefix_sum(nat_arg(x.big_n, "N"), x.exact ? SumMode::Exact : SumMode::Float,
                                       nat_arg(g.max_exact_n, "--max-exact-N"));
    Record rec;
    rec.add("N", str(rep.N));
    if (rep.exact_sum) {
      rec.add("sum", str(*rep.exact_sum));
      rec.add("decimal", Json(rep.exact_sum->to_double()), str(rep.exact_sum->to_double()));
    } else {
      rec.add("sum", Json(*rep.float_sum), str(*rep.float_sum));
      rec.add("error_bound", Json(rep.float_error_bound), str(rep.float_error_bound));
    }
    if (rep.bounds) {
      rec.add("lower", to_string(rep.bounds->lower));
      rec.add("upper", to_string(rep.bounds->upper));
    }
    return rec.done();
  };

  subs["alpha"]->add_option("--t", x.t, "shift")->required();
  subs["alpha"]->add_option("--N", x.big_n, "N")->required();
  h["alpha"] = [&] {
    const double v = alpha_estimate(x.t, nat_arg(x.big_n, "N"));
    // The limit is only known to exist for t = 1.
    return Record().add("estimate", Json(v), str(v)).add("status", "empirical").done();
  };

  subs["diffrange"]->add_option("--d", x.d, "modulus")->default_val(5);
  subs["diffrange"]->add_option("--a", x.ra, "first residue")->default_val(1);
  subs["diffrange"]->add_option("--b", x.rb, "second residue")->default_val(4);
  subs["diffrange"]->add_option("--N", x.big_n, "limit")->required();
  h["diffrange"] = [&] {
    const Nat N = nat_arg(x.big_n, "N");
    if (N > kMaxFloatN) throw ResourceError("diffrange is capped at N <= 2^40");
    const DifferenceRange range = residue_difference_range(x.d, x.ra, x.rb, N.convert_to<std::uint64_t>());
    return Record().add("min", str(range.min)).add("max", str(range.max)).done();
  };

  subs["verify"]->add_option("--suite", x.suite, "suite name")->check(CLI::IsMember(suite_names()));
  // verify is handled in run() because its exit code depends on the outcome.
  return h;
}

Json params_of(const CLI::App& sub) {
  Json params = Json::object();
  for (const CLI::Option* opt : sub.get_options()) {
    const std::string& name = opt->get_single_name();
    if (name == "help") continue;
    if (opt->get_expected_max() == 0) {
      params[name] = opt->count() > 0;
    } else if (opt->count() > 0) {
      const auto& values = opt->results();
      params[name] = values.size() == 1 ? Json(values[0]) : Json(values);
    } else if (!opt->get_default_str().empty()) {
      params[name] = opt->get_default_str();
    }
  }
  return params;
}

void emit(std::ostream& out, const Globals& g, const std::string& command, const Json& params,
          const Output& o) {
  if (g.format == "json") {
    Json env = Json::object();
    env["format_version"] = kFormatVersion;
    env["command"] = command;
    env["params"] = params;
    env["result"] = o.result;
    out << env.dump(2) << '\n';
  } else {
    out << o.tsv;
  }
}

int run_verify(const Args& x, std::ostream& err, Output& o) {
  const auto results = run_suite(x.suite);
  Table t({"suite", "passed", "failed"});
  bool ok = true;
  for (const auto& r : results) {
    t.row({r.name, str(r.passed), str(r.failed)});
    for (const auto& f : r.failures) err << r.name << ": " << f << '\n';
    ok = ok && r.ok();
  }
  o = t.done();
  return ok ? kOk : kVerifyFailed;
}

}  // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Stern diatomic sequence toolkit", "stern"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--format", g.format, "tsv or json")->check(CLI::IsMember({"tsv", "json"}));
  app.add_option("--threads", g.threads, "workers for the parallel scans")->check(CLI::Range(1U, 256U));
  app.add_option("--max-row-bits", g.max_row_bits, "row length cap, as a power of two");
  app.add_option("--max-matrix-order", g.max_matrix_order, "largest N_d accepted");
  app.add_option("--max-exact-N", g.max_exact_n, "largest N for exact prefix sums");

  Args x;
  std::map<std::string, CLI::App*> subs;
  const auto handlers = build(app, x, g, subs);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  CLI::App* sub = app.get_subcommands().front();
  const std::string command = sub->get_name();
  try {
    Output o;
    int code = kOk;
    if (command == "verify") {
      code = run_verify(x, err, o);
    } else {
      o = handlers.at(command)();
    }
    emit(out, g, command, params_of(*sub), o);
    return code;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << '\n';
    return kDomain;
  } catch (const ResourceError& e) {
    err << "resource limit: " << e.what() << '\n';
    return kResource;
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << '\n';
    return kNumerical;
  }
}

}  // namespace stern::cli
