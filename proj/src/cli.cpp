#include "padicsym/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <iostream>
#include <iterator>
#include <random>
#include <thread>

#include "padicsym/acceptance.hpp"
#include "padicsym/densities.hpp"
#include "padicsym/localglobal.hpp"
#include "padicsym/montecarlo.hpp"
#include "padicsym/oracle.hpp"
#include "padicsym/serialize.hpp"

namespace padicsym::cli {

namespace {

int default_threads() { return static_cast<int>(std::max(1u, std::thread::hardware_concurrency())); }

struct Flags {
  Int p = 0;
  int n = 0;
  int m = 0;
  int K = 0;  // 0: the subcommand's default
  int cap = 8;
  int cutoff = 1;
  int hasse = 0;
  int criterion = 0;
  Int prime_cutoff = 100'000;
  std::string lambda, signs, matrix, disc;
  std::string format = "json";
  std::string check_format = "table";
  std::string event = "isotropic";
  std::string kind = "first-divisors";
  std::string size = "inf";
  std::int64_t samples = 10'000;
  std::int64_t check_samples = 100'000;
  std::int64_t budget = kDefaultBudget;
  std::uint64_t seed = 0;
  bool assume_p2 = true;
  bool symmetric = false;
  bool isotropy = false;
  bool limit = false;
  int threads = default_threads();
};

// Every command fills both the JSON value and a flat table for csv/table output.
struct Report {
  Json json;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) out += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return out + "\"";
}

void emit(const Report& r, const std::string& format, std::ostream& out) {
  if (format == "json") {
    out << r.json.dump() << '\n';
    return;
  }
  if (format == "csv") {
    auto line = [&](const std::vector<std::string>& cells) {
      for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << csv_field(cells[i]);
      out << '\n';
    };
    line(r.columns);
    for (const auto& row : r.rows) line(row);
    return;
  }
  std::vector<std::size_t> width(r.columns.size());
  for (std::size_t i = 0; i < r.columns.size(); ++i) {
    width[i] = r.columns[i].size();
    for (const auto& row : r.rows) width[i] = std::max(width[i], row[i].size());
  }
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      out << cells[i];
      if (i + 1 < cells.size()) out << std::string(width[i] - cells[i].size() + 2, ' ');
    }
    out << '\n';
  };
  line(r.columns);
  for (const auto& row : r.rows) line(row);
}

Report rational_report(const BigRational& q) {
  return {to_json(q), {"num", "den"}, {{q.get_num().get_str(), q.get_den().get_str()}}};
}

Report interval_report(const Interval& iv) {
  return {to_json(iv), {"lower", "upper"}, {{iv.lower.get_str(), iv.upper.get_str()}}};
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : text) {
    if (ch == sep) {
      out.push_back(cur);
      cur.clear();
    } else if (ch != ' ') {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

std::vector<int> parse_ints(const std::string& text, const std::string& flag) {
  std::vector<int> out;
  for (const auto& item : split(text, ',')) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (item.empty() || used != item.size()) throw InvalidArgument(flag + " expects comma-separated integers, got '" + text + "'");
    out.push_back(v);
  }
  return out;
}

std::vector<int> parse_signs(const std::string& text) {
  if (text.empty()) throw InvalidArgument("--signs is required (one of + or - per block)");
  std::vector<std::string> items = split(text, ',');
  if (items.size() == 1 && items[0].size() > 1 && items[0] != "+1" && items[0] != "-1") {
    items.clear();
    for (char ch : text) items.emplace_back(1, ch);
  }
  std::vector<int> out;
  for (const auto& s : items) {
    if (s == "+" || s == "+1" || s == "1")
      out.push_back(1);
    else if (s == "-" || s == "-1")
      out.push_back(-1);
    else
      throw InvalidArgument("--signs entries must be + or -, got '" + s + "'");
  }
  return out;
}

EldivSequence lambda_for(const Flags& f) {
  if (f.lambda.empty()) throw InvalidArgument("--lambda is required");
  EldivSequence e(parse_ints(f.lambda, "--lambda"));
  if (f.n && e.size() != f.n)
    throw InvalidArgument("--lambda has " + std::to_string(e.size()) + " exponents but -n is " + std::to_string(f.n));
  return e;
}

SymClass class_for(const Flags& f) { return SymClass(lambda_for(f), parse_signs(f.signs)); }

ResidueMatrix read_matrix(const Flags& f, std::istream& in) {
  if (f.matrix.empty()) throw InvalidArgument("--matrix is required");
  if (f.matrix != "-") return parse_matrix(f.matrix);
  return parse_matrix(std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()));
}

ResidueMatrix read_symmetric(const Flags& f, const Ring& ring, std::istream& in) {
  const ResidueMatrix X = reduce(ring, read_matrix(f, in));
  if (X.rows() != X.cols() || !is_symmetric(X)) throw InvalidArgument("--matrix must be square and symmetric mod p^K");
  return X;
}

ClassPredicate event_predicate(const std::string& event, Int p) {
  const auto eq = event.find('=');
  const std::string key = event.substr(0, eq), value = eq == std::string::npos ? "" : event.substr(eq + 1);
  if (event == "isotropic" || event == "anisotropic") {
    const bool want = event == "isotropic";
    return [p, want](const SymClass& c) { return isotropic_by_invariants(qp_class(c, p), p) == want; };
  }
  if (event == "unimodular")
    return [](const SymClass& c) { return c.eldivs.weight() == 0; };
  if (key == "disc" && !value.empty()) {
    const SquareClass d = SquareClass::parse(value);
    return [p, d](const SymClass& c) { return qp_class(c, p).disc == d; };
  }
  if (key == "hasse" && (value == "1" || value == "-1" || value == "+1")) {
    const int h = value == "-1" ? -1 : 1;
    return [p, h](const SymClass& c) { return qp_class(c, p).hasse == h; };
  }
  if (key == "eldivs" && !value.empty()) {
    const EldivSequence e(parse_ints(value, "--event eldivs"));
    return [e](const SymClass& c) { return c.eldivs == e; };
  }
  throw InvalidArgument("unknown --event '" + event + "'");
}

bool is_precondition(const Error& e) {
  return dynamic_cast<const InvalidArgument*>(&e) || dynamic_cast<const SingularClass*>(&e) ||
         dynamic_cast<const UndefinedSignature*>(&e) || dynamic_cast<const LengthExceedsN*>(&e);
}

CLI::Validator prime_validator(bool odd) {
  return CLI::Validator(
      [odd](std::string& s) -> std::string {
        Int v = 0;
        try {
          v = std::stoll(s);
        } catch (const std::exception&) {
          return s + " is not an integer";
        }
        if (!is_prime(v) || (odd && v == 2)) return s + (odd ? " is not an odd prime" : " is not a prime");
        return {};
      },
      odd ? "ODD PRIME" : "PRIME");
}

int run_check(const Flags& f, std::ostream& out) {
  AcceptanceOptions opts;
  opts.threads = f.threads;
  opts.mc_samples = f.check_samples;
  std::vector<CriterionResult> results;
  auto print = [&](const CriterionResult& r) {
    if (f.check_format == "table") out << format_result(r) << std::endl;
  };
  if (f.criterion) {
    results.push_back(run_criterion(f.criterion, opts));
    print(results.back());
  } else {
    results = run_acceptance(opts, print);
  }
  bool all = true;
  Report rep;
  rep.json = Json::array();
  rep.columns = {"id", "name", "pass", "seconds", "detail"};
  for (const auto& r : results) {
    all = all && r.pass;
    rep.json.push_back({{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"seconds", r.seconds}, {"detail", r.detail}});
    rep.rows.push_back({std::to_string(r.id), r.name, r.pass ? "true" : "false", std::to_string(r.seconds), r.detail});
  }
  if (f.check_format != "table") emit(rep, f.check_format, out);
  return all ? 0 : 1;
}

}  // namespace

int run(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Canonical forms and exact densities of random symmetric matrices over the p-adic integers.",
               "padicsym"};
  app.require_subcommand(1);
  Flags f;
  std::map<std::string, std::function<Report()>> handlers;
  const auto odd_prime = prime_validator(true), any_prime = prime_validator(false);

  auto command = [&](const std::string& name, const std::string& about, const std::string& csv,
                     std::function<Report()> handler) {
    CLI::App* sub = app.add_subcommand(name, about);
    sub->add_option("--format", f.format, "Output format")->check(CLI::IsMember({"json", "csv", "table"}))
        ->capture_default_str();
    sub->footer("CSV columns: " + csv);
    handlers[name] = std::move(handler);
    return sub;
  };
  auto add_p = [&](CLI::App* sub, bool odd = true) {
    sub->add_option("-p", f.p, odd ? "Odd prime" : "Prime")->required()->check(odd ? odd_prime : any_prime);
  };
  auto add_n = [&](CLI::App* sub, bool required) {
    auto* opt = sub->add_option("-n", f.n, "Matrix size")->check(CLI::Range(1, 64));
    if (required) opt->required();
  };
  auto add_K = [&](CLI::App* sub, int fallback) {
    sub->add_option("-K", f.K, "Precision: work mod p^K (default " + std::to_string(fallback) + ")")
        ->check(CLI::Range(1, 62));
  };
  auto K_or = [&](int fallback) { return f.K ? f.K : fallback; };
  auto add_lambda = [&](CLI::App* sub, const std::string& what) { sub->add_option("--lambda", f.lambda, what); };
  auto add_signs = [&](CLI::App* sub) { sub->add_option("--signs", f.signs, "One + or - per distinct exponent"); };
  auto add_matrix = [&](CLI::App* sub) {
    sub->add_option("--matrix", f.matrix, "JSON array of rows, or - to read it from stdin")->required();
  };
  auto add_budget = [&](CLI::App* sub) {
    sub->add_option("--budget", f.budget, "Brute-force step budget")->capture_default_str()->check(CLI::PositiveNumber);
  };
  auto add_threads = [&](CLI::App* sub) {
    sub->add_option("--threads", f.threads, "Worker threads")->capture_default_str()->check(CLI::Range(1, 1024));
  };

  auto* decompose = command("decompose", "Canonical form U S U^T of a symmetric matrix", "class,disc,hasse,U", [&] {
    const Ring ring(f.p, K_or(6));
    const ResidueMatrix X = read_symmetric(f, ring, in);
    const CanonicalForm cf = sym_canonical(ring, X);
    const QpClass q = qp_class(cf.cls, f.p);
    Report r;
    r.json = {{"p", f.p}, {"K", ring.K()}, {"class", to_json(cf.cls)}, {"disc", q.disc.tag()},
              {"hasse", q.hasse}, {"U", matrix_json(cf.U)}};
    r.columns = {"class", "disc", "hasse", "U"};
    r.rows = {{cf.cls.label(), q.disc.tag(), std::to_string(q.hasse), matrix_json(cf.U).dump()}};
    return r;
  });
  add_matrix(decompose);
  add_p(decompose);
  add_K(decompose, 6);

  auto* class_prob = command("class-prob", "Probability of a congruence class", "num,den",
                             [&] { return rational_report(sym_class_prob(class_for(f), f.p)); });
  add_n(class_prob, false);
  add_p(class_prob);
  add_lambda(class_prob, "Exponents k_1 <= ... <= k_n");
  add_signs(class_prob);

  auto* eldiv_prob = command("eldiv-prob", "Probability of an elementary-divisor sequence (symmetric)", "num,den",
                             [&] { return rational_report(sym_eldiv_prob(lambda_for(f), f.p)); });
  add_n(eldiv_prob, false);
  add_p(eldiv_prob);
  add_lambda(eldiv_prob, "Exponents k_1 <= ... <= k_n");

  auto* gen_prob = command("gen-prob", "Elementary-divisor probability for general n x m matrices", "num,den", [&] {
    Flags g = f;
    g.n = 0;  // lambda has min(n, m) entries, checked below
    const EldivSequence e = lambda_for(g);
    const int rows = f.n ? f.n : e.size(), cols = f.m ? f.m : rows;
    if (e.size() != std::min(rows, cols))
      throw InvalidArgument("--lambda needs min(n, m) = " + std::to_string(std::min(rows, cols)) + " exponents");
    if (rows == cols) return rational_report(gen_eldiv_prob(e, f.p));
    return rational_report(rect_eldiv_prob(e, std::max(rows, cols), f.p));
  });
  add_n(gen_prob, false);
  gen_prob->add_option("-m", f.m, "Columns (default n)")->check(CLI::Range(1, 64));
  add_p(gen_prob, false);
  add_lambda(gen_prob, "Exponents k_1 <= ... <= k_min(n,m)");

  auto* rank_dist = command("rank-dist", "Rank distribution over F_p", "corank,rank,num,den", [&] {
    const int m = f.m ? f.m : f.n;
    if (f.symmetric && m != f.n) throw InvalidArgument("symmetric matrices are square; drop -m");
    if (f.symmetric) (void)OddPrime(f.p);
    const int lo = std::min(f.n, m), hi = std::max(f.n, m);
    Report r;
    r.columns = {"corank", "rank", "num", "den"};
    Json dist = Json::array();
    for (int corank = 0; corank <= lo; ++corank) {
      const BigRational q = f.symmetric ? rank_dist_symmetric(lo, corank, f.p) : rank_dist_general(lo, hi, corank, f.p);
      dist.push_back({{"corank", corank}, {"rank", lo - corank}, {"prob", to_json(q)}});
      r.rows.push_back({std::to_string(corank), std::to_string(lo - corank), q.get_num().get_str(), q.get_den().get_str()});
    }
    r.json = {{"n", f.n}, {"m", m}, {"p", f.p}, {"symmetric", f.symmetric}, {"dist", dist}};
    return r;
  });
  add_n(rank_dist, true);
  rank_dist->add_option("-m", f.m, "Columns (default n)")->check(CLI::Range(1, 64));
  add_p(rank_dist, false);
  rank_dist->add_flag("--symmetric", f.symmetric, "Symmetric matrices (p odd)");

  auto* rho = command("rho", "Joint law of discriminant and Hasse invariant", "disc,hasse,lower_num,lower_den,upper_num,upper_den", [&] {
    if (!f.limit && f.n == 0) throw InvalidArgument("-n is required unless --limit is given");
    (void)OddPrime(f.p);
    const bool filter_disc = !f.disc.empty();
    const SquareClass only_disc = filter_disc ? SquareClass::parse(f.disc) : SquareClass::one();
    if (f.hasse != 0 && f.hasse != 1 && f.hasse != -1) throw InvalidArgument("--hasse must be 1 or -1");
    Report r;
    r.columns = {"disc", "hasse", "lower_num", "lower_den", "upper_num", "upper_den"};
    Json rows = Json::array();
    for (SquareClass a : kAllSquareClasses)
      for (int b : {1, -1}) {
        if ((filter_disc && a != only_disc) || (f.hasse && b != f.hasse)) continue;
        const Interval iv = f.limit ? rho_limit(a, b, f.p) : Interval::point(rho_n(a, b, f.n, f.p));
        const Json prob = f.limit ? to_json(iv) : to_json(iv.lower);
        rows.push_back({{"disc", a.tag()}, {"hasse", b}, {"prob", prob}});
        r.rows.push_back({a.tag(), std::to_string(b), iv.lower.get_num().get_str(), iv.lower.get_den().get_str(),
                          iv.upper.get_num().get_str(), iv.upper.get_den().get_str()});
      }
    r.json = {{"n", f.limit ? Json("inf") : Json(f.n)}, {"p", f.p}, {"rho", rows}};
    return r;
  });
  add_n(rho, false);
  add_p(rho);
  rho->add_option("--disc", f.disc, "Only this discriminant class: 1, r, p or pr");
  rho->add_option("--hasse", f.hasse, "Only this Hasse invariant: 1 or -1");
  rho->add_flag("--limit", f.limit, "The n -> infinity limit, as intervals");

  auto* isotropy = command("isotropy", "Isotropy of a symmetric matrix over Q_p", "class,disc,hasse,isotropic,certified,depth,witness", [&] {
    const Ring ring(f.p, K_or(6));
    const ResidueMatrix X = read_symmetric(f, ring, in);
    const SymClass cls = sym_canonical(ring, X).cls;
    const QpClass q = qp_class(cls, f.p);
    const bool iso = isotropic_by_invariants(q, f.p);
    Report r;
    r.json = {{"class", to_json(cls)}, {"disc", q.disc.tag()}, {"hasse", q.hasse}, {"isotropic", iso}};
    std::string certified = "", depth = "", witness = "";
    if (X.rows() <= 4) {
      const IsotropySearch s = isotropy_search(ring, X);
      Json w = Json::array();
      for (Eigen::Index i = 0; i < s.witness.size(); ++i) w.push_back(s.witness(i));
      r.json["search"] = {{"certified", s.certified}, {"depth", s.depth}, {"witness", s.certified ? w : Json(nullptr)}};
      certified = s.certified ? "true" : "false";
      depth = std::to_string(s.depth);
      if (s.certified) witness = w.dump();
    }
    r.columns = {"class", "disc", "hasse", "isotropic", "certified", "depth", "witness"};
    r.rows = {{cls.label(), q.disc.tag(), std::to_string(q.hasse), iso ? "true" : "false", certified, depth, witness}};
    return r;
  });
  add_matrix(isotropy);
  add_p(isotropy);
  add_K(isotropy, 6);

  auto* isotropy_prob_cmd = command("isotropy-prob", "Probability that a random form is isotropic over Q_p", "num,den",
                                    [&] { return rational_report(isotropy_prob(f.n, f.p)); });
  add_n(isotropy_prob_cmd, true);
  add_p(isotropy_prob_cmd);

  auto* partition_limit = command(
      "partition-limit", "Law of the nonzero exponents as a partition (finite n or the limit)",
      "num,den for -n; lower,upper for the limit; lower,upper,tail without --lambda", [&] {
        if (f.lambda.empty()) {
          const PartitionMass pm = partition_mass(f.p, f.cap);
          return Report{{{"p", f.p}, {"max_size", f.cap}, {"partial", to_json(pm.partial)}, {"tail", to_json(pm.tail)}},
                        {"lower", "upper", "tail"},
                        {{pm.partial.lower.get_str(), pm.partial.upper.get_str(), pm.tail.get_str()}}};
        }
        const Partition lambda(parse_ints(f.lambda, "--lambda"));
        if (f.n) return rational_report(finite_partition_prob(lambda, f.n, f.p));
        return interval_report(limit_partition_prob(lambda, f.p));
      });
  add_n(partition_limit, false);
  add_p(partition_limit);
  add_lambda(partition_limit, "Partition parts (any order); omit for the total mass up to --cap");
  partition_limit->add_option("--cap", f.cap, "Largest partition size summed when --lambda is omitted")
      ->capture_default_str()->check(CLI::Range(0, 40));

  auto* det_dist_cmd = command("det-dist", "P(|det| = p^-k) for k = 0..cap", "k,num,den", [&] {
    Report r;
    r.columns = {"k", "num", "den"};
    Json rows = Json::array();
    for (int k = 0; k <= f.cap; ++k) {
      const Interval iv = det_dist(f.n, k, f.p, f.cap);
      rows.push_back({{"k", k}, {"prob", iv.lower == iv.upper ? to_json(iv.lower) : to_json(iv)}});
      r.rows.push_back({std::to_string(k), iv.lower.get_num().get_str(), iv.lower.get_den().get_str()});
    }
    r.json = {{"n", f.n}, {"p", f.p}, {"dist", rows}};
    return r;
  });
  add_n(det_dist_cmd, true);
  add_p(det_dist_cmd);
  det_dist_cmd->add_option("--cap", f.cap, "Largest k")->capture_default_str()->check(CLI::Range(0, 40));

  auto* event_prob = command("event-prob", "Bracket for the probability of a class event", "lower,upper", [&] {
    (void)OddPrime(f.p);
    const Interval iv = event_prob_capped(event_predicate(f.event, f.p), f.n, f.p, f.cap);
    Report r = interval_report(iv);
    r.json = {{"event", f.event}, {"n", f.n}, {"p", f.p}, {"cap", f.cap}, {"prob", to_json(iv)}};
    return r;
  });
  add_n(event_prob, true);
  add_p(event_prob);
  event_prob->add_option("--cap", f.cap, "Classes with every exponent <= cap are enumerated")
      ->capture_default_str()->check(CLI::Range(0, 40));
  event_prob->add_option("--event", f.event,
                         "isotropic, anisotropic, unimodular, disc=<1|r|p|pr>, hasse=<1|-1> or eldivs=<k,..>")
      ->capture_default_str();

  auto* enumerate = command("enumerate", "Brute-force orbits of GL_n acting on symmetric matrices mod p^K",
                            "class,size,mass,formula,representative", [&] {
    const Ring ring(f.p, K_or(2));
    const auto orbits = enumerate_orbits(f.n, f.p, ring.K(), f.budget);
    BigInt total = ipow(f.p, static_cast<unsigned long>(ring.K()) * f.n * (f.n + 1) / 2);
    Report r;
    r.columns = {"class", "size", "mass", "formula", "representative"};
    Json rows = Json::array();
    for (const auto& o : orbits) {
      BigRational mass{BigInt(static_cast<long>(o.size)), total};
      mass.canonicalize();
      std::string label = "unresolved";
      Json formula = nullptr;
      std::string formula_text;
      try {
        const SymClass cls = sym_canonical(ring, o.representative).cls;
        label = cls.label();
        const BigRational q = sym_class_prob(cls, f.p);
        formula = to_json(q);
        formula_text = q.get_str();
      } catch (const PrecisionExhausted&) {
      }
      rows.push_back({{"class", label}, {"size", o.size}, {"mass", to_json(mass)}, {"formula", formula},
                      {"representative", matrix_json(o.representative)}});
      r.rows.push_back({label, std::to_string(o.size), mass.get_str(), formula_text, matrix_json(o.representative).dump()});
    }
    r.json = {{"n", f.n}, {"p", f.p}, {"K", ring.K()}, {"orbits", rows}};
    return r;
  });
  add_n(enumerate, true);
  add_p(enumerate);
  add_K(enumerate, 2);
  add_budget(enumerate);

  auto* stabilizer = command("stabilizer", "Stabiliser order of a class mod p^K, brute force and closed form",
                             "class,K,brute_force,formula,agree", [&] {
    const SymClass cls = class_for(f);
    const int K = K_or(2);
    const BigInt brute = stabilizer_count(cls, f.p, K, f.budget);
    std::string formula = "";
    try {
      formula = stabilizer_count_formula(cls, f.p, K).get_str();
    } catch (const Error&) {
    }
    const bool agree = formula == brute.get_str();
    Report r;
    r.json = {{"class", cls.label()}, {"K", K}, {"brute_force", brute.get_str()},
              {"formula", formula.empty() ? Json(nullptr) : Json(formula)}, {"agree", agree}};
    r.columns = {"class", "K", "brute_force", "formula", "agree"};
    r.rows = {{cls.label(), std::to_string(K), brute.get_str(), formula, agree ? "true" : "false"}};
    return r;
  });
  add_n(stabilizer, false);
  add_p(stabilizer);
  add_K(stabilizer, 2);
  add_lambda(stabilizer, "Exponents k_1 <= ... <= k_n");
  add_signs(stabilizer);
  add_budget(stabilizer);

  auto* orth_count = command("orth-count", "Order of the orthogonal group of 1^s mod p^k", "n,s,k,brute_force,formula,agree", [&] {
    const std::vector<int> s = parse_signs(f.signs.empty() ? "+" : f.signs);
    if (s.size() != 1) throw InvalidArgument("--signs takes a single + or - here");
    const int k = K_or(1);
    const BigInt brute = orth_count_mod(f.n, s[0], f.p, k, f.budget);
    const BigRational formula = alpha_ns(f.n, s[0], f.p) * rpow(f.p, static_cast<long>(k) * f.n * (f.n - 1) / 2);
    const bool agree = BigRational(brute) == formula;
    Report r;
    r.json = {{"n", f.n}, {"s", s[0]}, {"p", f.p}, {"k", k}, {"brute_force", brute.get_str()},
              {"formula", to_json(formula)}, {"agree", agree}};
    r.columns = {"n", "s", "k", "brute_force", "formula", "agree"};
    r.rows = {{std::to_string(f.n), s[0] > 0 ? "+" : "-", std::to_string(k), brute.get_str(), formula.get_str(),
               agree ? "true" : "false"}};
    return r;
  });
  add_n(orth_count, true);
  add_p(orth_count);
  add_K(orth_count, 1);
  add_signs(orth_count);
  add_budget(orth_count);

  CLI::Option* seed_opt = nullptr;
  auto* simulate = command("simulate", "Monte Carlo class frequencies against the exact law (or isotropy with --isotropy)",
                           "label,observed,expected,z (class mode); seed,samples,isotropic,undecided,frequency,exact,z",
                           [&] {
    if (!seed_opt->count()) {
      std::random_device rd;
      f.seed = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
      err << "generated seed " << f.seed << '\n';
    }
    const int K = K_or(4);
    Report r;
    if (f.isotropy) {
      const IsotropyFrequency fr = isotropy_frequency(f.n, f.p, f.samples, f.seed, K, f.threads);
      r.json = {{"seed", f.seed}, {"samples", fr.samples}, {"isotropic", fr.isotropic}, {"undecided", fr.undecided},
                {"frequency", fr.frequency()}, {"exact", to_json(fr.exact)}, {"z", fr.z()}};
      r.columns = {"seed", "samples", "isotropic", "undecided", "frequency", "exact", "z"};
      r.rows = {{std::to_string(f.seed), std::to_string(fr.samples), std::to_string(fr.isotropic),
                 std::to_string(fr.undecided), std::to_string(fr.frequency()), fr.exact.get_str(), std::to_string(fr.z())}};
      return r;
    }
    const TallyTable t = empirical_class_dist(f.n, f.p, K, f.samples, f.seed, f.cutoff, f.threads);
    GofReport rep = gof_chisq(t, expected_class_masses(f.n, f.p, f.cutoff));
    rep.seed = f.seed;
    r.json = to_json(rep);
    r.columns = {"label", "observed", "expected", "z"};
    for (const auto& row : rep.rows)
      r.rows.push_back({row.label, std::to_string(row.observed), std::to_string(row.expected), std::to_string(row.z)});
    return r;
  });
  add_n(simulate, true);
  add_p(simulate);
  add_K(simulate, 4);
  simulate->add_option("--samples", f.samples, "Number of samples")->capture_default_str()->check(CLI::PositiveNumber);
  seed_opt = simulate->add_option("--seed", f.seed, "Random seed (generated and printed when omitted)");
  simulate->add_option("--cutoff", f.cutoff, "Classes with an exponent above this go to the tail")
      ->capture_default_str()->check(CLI::NonNegativeNumber);
  simulate->add_flag("--isotropy", f.isotropy, "Estimate the isotropy probability instead");
  add_threads(simulate);

  auto* euler = command("euler-product", "Densities of integer matrices as Euler products", "n,cutoff,lower,upper,assume_p2,tail_bound", [&] {
    int n = kInfiniteN;
    if (f.size != "inf") {
      const auto v = parse_ints(f.size, "-n");
      if (v.size() != 1) throw InvalidArgument("-n takes an integer or inf");
      n = v[0];
    }
    const EulerProductResult res = f.kind == "first-divisors" ? density_first_divisors_one(n, f.prime_cutoff, f.assume_p2)
                                                              : density_squarefree_det(n, f.prime_cutoff, f.assume_p2);
    Report r;
    r.json = to_json(res);
    r.columns = {"n", "cutoff", "lower", "upper", "assume_p2", "tail_bound"};
    r.rows = {{n == kInfiniteN ? "inf" : std::to_string(n), std::to_string(res.prime_cutoff), res.value.lower,
               res.value.upper, res.assume_p2 ? "true" : "false", std::to_string(res.tail_bound)}};
    return r;
  });
  euler->add_option("--kind", f.kind, "first-divisors or squarefree")
      ->check(CLI::IsMember({"first-divisors", "squarefree"}))->capture_default_str();
  euler->add_option("-n", f.size, "Matrix size or inf")->capture_default_str();
  euler->add_option("--cutoff", f.prime_cutoff, "Largest prime taken explicitly")
      ->capture_default_str()->check(CLI::Range(Int{2}, Int{1'000'000'000}));
  euler->add_flag("--assume-p2,!--no-assume-p2", f.assume_p2, "Include the p = 2 factor from the odd-p formula")
      ->capture_default_str();

  auto* check = app.add_subcommand("check", "Run the acceptance criteria; exits 1 if any fails");
  check->add_option("--format", f.check_format, "table prints one line per criterion")
      ->check(CLI::IsMember({"json", "csv", "table"}))->capture_default_str();
  check->add_option("--criterion", f.criterion, "Run a single criterion")->check(CLI::Range(1, kCriterionCount));
  check->add_option("--samples", f.check_samples, "Monte Carlo sample count")->capture_default_str()
      ->check(CLI::PositiveNumber);
  add_threads(check);
  check->footer("CSV columns: id,name,pass,seconds,detail");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 2;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  try {
    if (name == "check") return run_check(f, out);
    emit(handlers.at(name)(), f.format, out);
    return 0;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return is_precondition(e) ? 2 : 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace padicsym::cli
