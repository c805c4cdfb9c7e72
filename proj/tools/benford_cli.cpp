// benford: significand analysis, Benford-spectrum scanning, reference
// samplers and the theorem verification suite.
//
// Exit codes: 0 success, 1 verdict/verification failure (--strict), 2 usage,
// 3 I/O.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "benford/conformance.hpp"
#include "benford/csv.hpp"
#include "benford/distributions.hpp"
#include "benford/harness.hpp"
#include "benford/report_json.hpp"
#include "benford/spectrum.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerdict = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

int worker_count() {
  const char* env = std::getenv("BENFORD_THREADS");
  if (env == nullptr) return 1;
  int n = std::atoi(env);
  if (n < 0) return 1;
  if (n == 0) {
    unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
  }
  return n;
}

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<double> load_column(const std::string& path, const std::string& column,
                                benford::IngestionSummary& summary) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open input file: " + path);
  benford::IngestResult res;
  try {
    res = benford::ingest_csv(in, column);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  summary = res.summary;
  if (res.values.empty()) throw IoError("no usable positive values in column " + column);
  return std::move(res.values);
}

// ---------------------------------------------------------------------------
// family specs: uexp:beta:c:d | fejer:beta | lattice:p1/q1:w1,p2/q2:w2,...
// ---------------------------------------------------------------------------
struct FamilySpec {
  enum class Kind { uexp, fejer, lattice } kind;
  std::optional<benford::UniformExponentVariate> uexp;
  std::optional<benford::FejerVariate> fejer;
  double fejer_beta = 0.0;
  std::optional<benford::LatticeVariate> lattice;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

double parse_num(const std::string& s, const char* what) {
  try {
    std::size_t pos = 0;
    double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw UsageError(std::string("malformed ") + what + ": '" + s + "'");
  }
}

FamilySpec parse_family(const std::string& spec) {
  auto parts = split(spec, ':');
  FamilySpec f{};
  try {
    if (parts[0] == "uexp") {
      if (parts.size() != 4) throw UsageError("uexp spec needs uexp:beta:c:d");
      f.kind = FamilySpec::Kind::uexp;
      f.uexp.emplace(parse_num(parts[1], "beta"), parse_num(parts[2], "c"),
                     parse_num(parts[3], "d"));
    } else if (parts[0] == "fejer") {
      if (parts.size() != 2) throw UsageError("fejer spec needs fejer:beta");
      f.kind = FamilySpec::Kind::fejer;
      f.fejer_beta = parse_num(parts[1], "beta");
      f.fejer.emplace(benford::FejerVariate::for_base(f.fejer_beta));
    } else if (parts[0] == "lattice") {
      if (parts.size() < 2) throw UsageError("lattice spec needs lattice:p/q:w,...");
      std::string rest = spec.substr(spec.find(':') + 1);
      std::vector<benford::LatticeAtom> atoms;
      for (const auto& entry : split(rest, ',')) {
        auto kv = split(entry, ':');
        if (kv.size() != 2) throw UsageError("lattice atom needs p/q:w, got '" + entry + "'");
        auto pq = split(kv[0], '/');
        if (pq.size() != 2) throw UsageError("lattice atom value must be p/q");
        benford::LatticeAtom a{};
        a.num = static_cast<std::int64_t>(parse_num(pq[0], "numerator"));
        a.den = static_cast<std::int64_t>(parse_num(pq[1], "denominator"));
        a.prob = parse_num(kv[1], "weight");
        atoms.push_back(a);
      }
      f.kind = FamilySpec::Kind::lattice;
      f.lattice.emplace(std::move(atoms));
    } else {
      throw UsageError("unknown family '" + parts[0] + "' (expected uexp|fejer|lattice)");
    }
  } catch (const std::domain_error& e) {
    throw UsageError(std::string("invalid family parameters: ") + e.what());
  }
  return f;
}

// ---------------------------------------------------------------------------
// subcommands
// ---------------------------------------------------------------------------
int cmd_analyze(const std::string& input, const std::string& column, double base_value,
                bool base_defaulted, int n_max, const std::string& hist_tsv, bool strict) {
  if (!(base_value > 1.0)) throw UsageError("--base must be > 1");
  benford::IngestionSummary summary;
  auto data = load_column(input, column, summary);
  benford::Base base(base_value);

  benford::ConformanceOptions opt;
  opt.n_max = n_max;
  opt.workers = worker_count();
  auto report = benford::analyze_conformance(data, base, opt);

  nlohmann::json j = benford::to_json(report);
  j["ingestion"] = benford::to_json(summary);
  if (base_defaulted)
    j["note"] = "base defaulted to 10; the choice of base is an arbitrary analysis "
                "parameter, not a property of the data";
  std::cout << j.dump(2) << "\n";

  if (!hist_tsv.empty()) {
    if (report.digit_freqs) {
      std::ofstream out(hist_tsv);
      if (!out) throw IoError("cannot write " + hist_tsv);
      out << "# benford analyze histogram base=" << base_value << " m=" << report.m
          << " columns=digit,freq,benford_freq\n";
      out.precision(17);
      for (const auto& d : *report.digit_freqs)
        out << d.digit << '\t' << d.freq << '\t' << d.benford_freq << '\n';
    } else {
      // non-integer base: equal log-width significand bins
      constexpr int kBins = 64;
      std::vector<double> freq(kBins, 0.0);
      for (double x : data) {
        int b = static_cast<int>(benford::log_mantissa(x, base) * kBins);
        if (b >= kBins) b = kBins - 1;
        freq[static_cast<std::size_t>(b)] += 1.0;
      }
      std::ofstream out(hist_tsv);
      if (!out) throw IoError("cannot write " + hist_tsv);
      out << "# benford analyze histogram base=" << base_value << " m=" << report.m
          << " columns=bin,freq,benford_freq\n";
      out.precision(17);
      for (int b = 0; b < kBins; ++b)
        out << b << '\t' << freq[static_cast<std::size_t>(b)] / static_cast<double>(data.size())
            << '\t' << 1.0 / kBins << '\n';
    }
  }

  if (strict && report.verdict != benford::Verdict::benford) return kExitVerdict;
  return kExitOk;
}

int cmd_spectrum(const std::string& input, const std::string& column,
                 const std::string& family, double b_lo, double b_hi, int steps,
                 int n_max, double tol, const std::string& tsv_path) {
  if (!(b_lo > 1.0) || !(b_hi > b_lo)) throw UsageError("--range requires 1 < b_lo < b_hi");
  if (steps < 2) throw UsageError("--steps must be >= 2");

  std::optional<benford::LogCf> cf;
  if (!family.empty()) {
    auto f = parse_family(family);
    if (f.kind == FamilySpec::Kind::uexp) {
      auto v = *f.uexp;
      cf = benford::LogCf::analytic([v](double t) { return v.cf_ln(t); });
    } else if (f.kind == FamilySpec::Kind::fejer) {
      auto v = *f.fejer;
      cf = benford::LogCf::analytic([v](double t) { return v.cf(t); });
    } else {
      throw UsageError("lattice variates live on [0,1) and have no positive-variable spectrum");
    }
  } else if (!input.empty()) {
    benford::IngestionSummary summary;
    auto data = load_column(input, column, summary);
    cf = benford::LogCf::from_positive_data(data);
  } else {
    throw UsageError("spectrum needs an input file or --family");
  }

  auto est = benford::scan_spectrum(*cf, b_lo, b_hi, steps, n_max, tol, worker_count());
  std::cout << benford::to_json(est).dump(2) << "\n";

  if (!tsv_path.empty()) {
    std::ofstream out(tsv_path);
    if (!out) throw IoError("cannot write " + tsv_path);
    out << "# benford spectrum range=[" << b_lo << "," << b_hi << "] steps=" << steps
        << " n_max=" << n_max << " columns=base,residual\n";
    out.precision(17);
    for (std::size_t i = 0; i < est.grid.size(); ++i)
      out << est.grid[i] << '\t' << est.residuals[i] << '\n';
  }
  return kExitOk;
}

int cmd_sample(const std::string& family, std::size_t n, std::uint64_t seed,
               const std::string& out_path) {
  if (n == 0) throw UsageError("-n must be >= 1");
  auto f = parse_family(family);

  std::vector<double> values;
  nlohmann::json sidecar{{"family", family}, {"n", n}, {"seed", seed}, {"output", out_path}};
  switch (f.kind) {
    case FamilySpec::Kind::uexp:
      values = benford::sample_uniform_exponent(*f.uexp, n, seed);
      break;
    case FamilySpec::Kind::fejer: {
      values = benford::sample_fejer(*f.fejer, n, seed);
      for (auto& v : values) v = std::exp(v);  // positive, Benford-testable
      break;
    }
    case FamilySpec::Kind::lattice:
      values = f.lattice->sample(n, seed);
      sidecar["rank"] = f.lattice->rank();
      break;
  }

  std::ofstream out(out_path);
  if (!out) throw IoError("cannot write " + out_path);
  out.precision(17);
  for (double v : values) out << v << '\n';
  if (!out) throw IoError("failed writing " + out_path);

  std::cout << sidecar.dump(2) << "\n";
  return kExitOk;
}

int cmd_verify(const std::string& suite, std::uint64_t seed, std::size_t m) {
  std::vector<benford::ExperimentResult> results;
  try {
    results = benford::run_suite(suite, seed, m);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  nlohmann::json arr = nlohmann::json::array();
  bool all_passed = true;
  for (const auto& r : results) {
    arr.push_back(benford::to_json(r));
    all_passed = all_passed && r.passed;
  }
  std::cout << arr.dump(2) << "\n";
  return all_passed ? kExitOk : kExitVerdict;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Benford's-law significand analysis and verification toolkit"};
  app.require_subcommand(1);

  // analyze
  auto* analyze = app.add_subcommand("analyze", "conformance report for a CSV column");
  std::string an_input, an_column = "1", an_hist_tsv;
  double an_base = 10.0;
  int an_nmax = 64;
  bool an_strict = false;
  analyze->add_option("input", an_input, "CSV file")->required();
  analyze->add_option("--column", an_column, "column name or 1-based index (default 1)");
  auto* base_opt = analyze->add_option("--base", an_base, "analysis base (> 1, default 10)");
  analyze->add_option("--nmax", an_nmax, "spectrum length for period detection");
  analyze->add_option("--hist-tsv", an_hist_tsv, "write a histogram TSV here");
  analyze->add_flag("--strict", an_strict, "exit 1 unless the verdict is 'benford'");

  // spectrum
  auto* spectrum = app.add_subcommand("spectrum", "scan the Benford spectrum of bases");
  std::string sp_input, sp_column = "1", sp_family, sp_tsv;
  std::vector<double> sp_range{2.0, 20.0};
  int sp_steps = 200, sp_nmax = 8;
  double sp_tol = 0.0;
  spectrum->add_option("input", sp_input, "CSV file of positive values");
  spectrum->add_option("--column", sp_column, "column name or 1-based index");
  spectrum->add_option("--family", sp_family, "analytic family uexp:beta:c:d | fejer:beta");
  spectrum->add_option("--range", sp_range, "base range b_lo b_hi")->expected(2);
  spectrum->add_option("--steps", sp_steps, "grid points");
  spectrum->add_option("--nmax", sp_nmax, "frequencies per base in the residual");
  spectrum->add_option("--tol", sp_tol, "detection tolerance (default: noise model)");
  spectrum->add_option("--tsv", sp_tsv, "write (base, residual) TSV here");

  // sample
  auto* sample = app.add_subcommand("sample", "draw a reference dataset");
  std::string sm_family, sm_out;
  std::uint64_t sm_seed = 1;
  std::size_t sm_n = 0;
  sample->add_option("--family", sm_family,
                     "uexp:beta:c:d | fejer:beta | lattice:p/q:w,...")->required();
  sample->add_option("-n,--count", sm_n, "number of draws")->required();
  sample->add_option("--seed", sm_seed, "RNG seed (default 1)");
  sample->add_option("-o,--output", sm_out, "output CSV path")->required();

  // verify
  auto* verify = app.add_subcommand("verify", "run the theorem verification suite");
  std::string vf_suite = "all";
  std::uint64_t vf_seed = 20240901;
  std::size_t vf_m = 0;
  verify->add_option("--suite", vf_suite, "experiment name or 'all'");
  verify->add_option("--seed", vf_seed, "master seed");
  verify->add_option("--m", vf_m, "sample count override (0 = per-experiment default)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (analyze->parsed())
      return cmd_analyze(an_input, an_column, an_base, base_opt->count() == 0, an_nmax,
                         an_hist_tsv, an_strict);
    if (spectrum->parsed())
      return cmd_spectrum(sp_input, sp_column, sp_family, sp_range[0], sp_range[1],
                          sp_steps, sp_nmax, sp_tol, sp_tsv);
    if (sample->parsed()) return cmd_sample(sm_family, sm_n, sm_seed, sm_out);
    if (verify->parsed()) return cmd_verify(vf_suite, vf_seed, vf_m);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const IoError& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::domain_error& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitOk;
}
