#include "minlab/cli.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "minlab/rng.hpp"

namespace minlab::cli {

using nlohmann::json;

std::vector<double> Grid::points() const {
  if (!(step > 0.0)) throw std::invalid_argument("grid step must be positive");
  if (end < start) throw std::invalid_argument("grid end must not precede start");
  const double range = end - start;
  const double ratio = range / step;
  const double rounded = std::round(ratio);
  const bool divides = std::abs(ratio - rounded) < 1e-9 * std::max(1.0, ratio);
  const auto count = static_cast<long>(divides ? rounded : std::floor(ratio));
  if (count > 1000000) throw std::invalid_argument("grid has too many points");
  std::vector<double> pts;
  pts.reserve(static_cast<std::size_t>(count + 1));
  for (long i = 0; i <= count; ++i) pts.push_back(start + static_cast<double>(i) * step);
  if (divides) pts.back() = end;
  return pts;
}

Grid parse_grid(const std::string& text) {
  Grid g;
  std::array<double*, 3> fields{&g.start, &g.end, &g.step};
  std::size_t pos = 0;
  for (std::size_t f = 0; f < fields.size(); ++f) {
    const std::size_t next = text.find(':', pos);
    const bool last = (f + 1 == fields.size());
    if (last != (next == std::string::npos)) throw std::invalid_argument("grid must look like start:end:step");
    const std::string piece = text.substr(pos, last ? std::string::npos : next - pos);
    const char* begin = piece.data();
    const char* stop = piece.data() + piece.size();
    auto [ptr, ec] = std::from_chars(begin, stop, *fields[f]);
    if (ec != std::errc() || ptr != stop || piece.empty()) {
      throw std::invalid_argument("grid must look like start:end:step");
    }
    pos = next + 1;
  }
  if (g.start < 0.0 || g.end > 1.0) throw std::invalid_argument("grid must stay within [0, 1]");
  (void)g.points();
  return g;
}

std::string format_number(double v) {
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::general, 12);
  if (ec != std::errc()) throw std::runtime_error("number formatting failed");
  return {buf.data(), ptr};
}

namespace {

std::string format_sci(double v) {
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::scientific, 3);
  if (ec != std::errc()) throw std::runtime_error("number formatting failed");
  return {buf.data(), ptr};
}

std::optional<PureState> as_pure(const StateInput& state) {
  if (const auto* psi = std::get_if<PureState>(&state)) return *psi;
  const auto& rho = std::get<DensityOperator>(state);
  if (rho.purity() < 1.0 - kConstructionTol) return std::nullopt;
  const EigenSystem eig = hermitian_eig(rho.matrix());
  return PureState(eig.vectors.col(0).normalized(), rho.profile());
}

std::vector<double> to_std(const RVector& v) { return {v.data(), v.data() + v.size()}; }

// FNV-1a, used to give every verify suite its own RNG stream.
std::uint64_t fnv1a(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

MeasureReport measure(const StateInput& state, std::size_t part, const SearchConfig& cfg, bool with_oracle) {
  const DensityOperator rho = as_density(state);
  const auto& prof = rho.profile();
  if (part >= prof.parts()) throw std::out_of_range("subsystem index out of range");
  const std::size_t d = prof.dim(part);

  MeasureReport r;
  r.profile = prof;
  r.part = part;
  const auto pure = as_pure(state);
  if (pure) {
    r.n_value = min_pure(*pure, part);
    r.n_method = "closed-form pure";
  } else if (d == 2) {
    r.n_value = min_qubit(rho, part);
    r.n_method = "closed-form qubit";
  } else {
    try {
      r.n_value = min_general_nondegenerate(rho, part);
      r.n_method = "closed-form non-degenerate";
    } catch (const DegenerateMarginal&) {
      r.n_value = min_direct(rho, part, cfg).value;
      r.n_method = "oracle";
    }
  }
  if (pure) {
    r.d_value = discord_pure(*pure, part);
    r.d_method = "closed-form pure";
  } else if (prof.all_qubits()) {
    r.d_value = discord_qubit(rho, part);
    r.d_method = "closed-form qubit";
  } else {
    r.d_value = discord_direct(rho, part, cfg).value;
    r.d_method = "oracle";
  }

  const BlochData bloch = bloch_decompose(rho);
  r.s_norm = bloch.coherent(part).norm();
  r.k_eigenvalues = to_std(symmetric_eigenvalues(k_matrix(bloch, part).entries));
  if (d == 2) r.verdict = equality_verdict(bloch, part);
  if (with_oracle) {
    r.n_oracle = min_direct(rho, part, cfg);
    r.d_oracle = discord_direct(rho, part, cfg);
  }
  return r;
}

void print_measure(const MeasureReport& r, bool as_json, std::ostream& out) {
  if (as_json) {
    json doc;
    doc["dims"] = r.profile.dims();
    doc["l"] = r.part + 1;
    doc["N"] = r.n_value;
    doc["D"] = r.d_value;
    doc["N_method"] = r.n_method;
    doc["D_method"] = r.d_method;
    doc["s_norm"] = r.s_norm;
    doc["k_eigenvalues"] = r.k_eigenvalues;
    if (r.verdict) {
      doc["case"] = std::string(to_string(r.verdict->equality_case));
      doc["predicted_equal"] = r.verdict->predicted_equal;
      doc["commutator_norm"] = r.verdict->commutator_norm;
    }
    if (r.n_oracle) {
      doc["N_oracle"] = r.n_oracle->value;
      doc["N_oracle_converged"] = r.n_oracle->converged;
    }
    if (r.d_oracle) {
      doc["D_oracle"] = r.d_oracle->value;
      doc["D_oracle_converged"] = r.d_oracle->converged;
    }
    out << doc.dump(2) << '\n';
    return;
  }
  out << "profile " << r.profile.to_string() << ", measured part l=" << r.part + 1 << '\n';
  out << "N = " << format_number(r.n_value) << "  (" << r.n_method << ")\n";
  out << "D = " << format_number(r.d_value) << "  (" << r.d_method << ")\n";
  if (r.n_oracle) out << "N oracle = " << format_number(r.n_oracle->value) << '\n';
  if (r.d_oracle) out << "D oracle = " << format_number(r.d_oracle->value) << '\n';
  out << "||s|| = " << format_number(r.s_norm) << '\n';
  out << "K eigenvalues =";
  for (double e : r.k_eigenvalues) out << ' ' << format_number(e);
  out << '\n';
  if (r.verdict) {
    out << "case " << to_string(r.verdict->equality_case)
        << ", predicted N == D: " << (r.verdict->predicted_equal ? "true" : "false") << '\n';
  }
}

SweepRow sweep_point(Family fam, double p, std::size_t part, double tol_eq) {
  const DensityOperator rho = family({fam, p});
  const BlochData bloch = bloch_decompose(rho);
  SweepRow row;
  row.p = p;
  row.n_value = min_qubit(rho, part);
  row.d_value = discord_qubit(rho, part);
  const RVector eta = symmetric_eigenvalues(k_matrix(bloch, part).entries);
  for (std::size_t i = 0; i < row.eta.size(); ++i) row.eta[i] = eta(static_cast<Eigen::Index>(i));
  row.s_norm = bloch.coherent(part).norm();
  const EqualityVerdict v = equality_verdict(bloch, part);
  row.equality_case = v.equality_case;
  row.predicted_equal = v.predicted_equal;
  row.observed_equal = std::abs(row.n_value - row.d_value) < tol_eq;
  return row;
}

std::vector<SweepRow> sweep(Family fam, const Grid& grid, std::size_t part, double tol_eq) {
  std::vector<SweepRow> rows;
  for (double p : grid.points()) rows.push_back(sweep_point(fam, p, part, tol_eq));
  return rows;
}

void write_sweep_csv(const std::vector<SweepRow>& rows, std::ostream& out) {
  out << kSweepHeader << '\n';
  for (const auto& r : rows) {
    out << format_number(r.p) << ',' << format_number(r.n_value) << ',' << format_number(r.d_value) << ','
        << format_number(r.eta[0]) << ',' << format_number(r.eta[1]) << ',' << format_number(r.eta[2]) << ','
        << format_number(r.s_norm) << ',' << to_string(r.equality_case) << ','
        << (r.predicted_equal ? "true" : "false") << ',' << (r.observed_equal ? "true" : "false") << '\n';
  }
}

void write_sweep_json(const std::vector<SweepRow>& rows, Family fam, std::size_t part, double tol_eq,
                      std::ostream& out) {
  json doc;
  doc["family"] = std::string(family_name(fam));
  doc["l"] = part + 1;
  doc["tol_eq"] = tol_eq;
  json arr = json::array();
  for (const auto& r : rows) {
    arr.push_back({{"p", r.p},
                   {"N", r.n_value},
                   {"D", r.d_value},
                   {"eta", {r.eta[0], r.eta[1], r.eta[2]}},
                   {"s_norm", r.s_norm},
                   {"case", std::string(to_string(r.equality_case))},
                   {"predicted_equal", r.predicted_equal},
                   {"observed_equal", r.observed_equal}});
  }
  doc["rows"] = std::move(arr);
  out << doc.dump(2) << '\n';
}

std::string plot_script(const std::string& csv_path, Family fam) {
  std::ostringstream os;
  os << "# gnuplot -p " << csv_path << ".gp\n"
     << "set datafile separator ','\n"
     << "set key autotitle columnhead\n"
     << "set xlabel 'p'\n"
     << "set title 'MiN and geometric discord, family " << family_name(fam) << "'\n"
     << "plot '" << csv_path << "' using 1:2 with lines dashtype 2 title 'N', \\\n"
     << "     '' using 1:3 with lines title 'D'\n";
  return os.str();
}

std::vector<double> threshold(Family fam, std::size_t part, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("threshold tolerance must be positive");
  constexpr int kScan = 1000;

  // Margin of the eigenvector ordering condition; empty where s = 0.
  const auto margin = [&](double p) -> std::optional<double> {
    const BlochData bloch = bloch_decompose(family({fam, p}));
    if (bloch.coherent(part).norm() <= kCoherentZeroTol) return std::nullopt;
    return case_one_margin(bloch, part);
  };

  std::vector<double> boundaries;
  std::optional<double> prev_value;
  double prev_p = 0.0;
  for (int i = 0; i <= kScan; ++i) {
    const double p = static_cast<double>(i) / kScan;
    const auto value = margin(p);
    if (value && prev_value && ((*value >= 0.0) != (*prev_value >= 0.0))) {
      double lo = prev_p, hi = p;
      const bool lo_holds = *prev_value >= 0.0;
      while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        const auto mv = margin(mid);
        if (!mv) break;
        if ((*mv >= 0.0) == lo_holds) {
          lo = mid;
        } else {
          hi = mid;
        }
      }
      boundaries.push_back(0.5 * (lo + hi));
    }
    prev_value = value;
    prev_p = p;
  }
  return boundaries;
}

std::vector<VerifySuite> default_verify_suites() {
  return {
      {DimensionProfile{2, 2, 2}, true, 1, 100},
      {DimensionProfile{2, 2, 2}, false, 2, 100},
      {DimensionProfile{2, 3}, false, 2, 50},
  };
}

VerifySuiteResult run_verify_suite(const VerifySuite& suite, std::uint64_t seed, const SearchConfig& cfg) {
  VerifySuiteResult res;
  res.name = std::string(suite.pure ? "pure " : "mixed ") + suite.profile.to_string();
  if (!suite.pure) res.name += " rank " + std::to_string(suite.rank);

  const bool discord_available = suite.pure || suite.profile.all_qubits();
  if (discord_available) res.d_max_dev = 0.0;

  Rng stream = Rng::stream(seed, fnv1a(res.name));
  for (int i = 0; i < suite.count; ++i) {
    const std::uint64_t state_seed = stream.next_u64();
    SearchConfig local = cfg;
    local.seed = stream.next_u64();

    const StateInput state = suite.pure ? StateInput(haar_pure(suite.profile, state_seed))
                                        : StateInput(random_mixed(suite.profile, suite.rank, state_seed));
    const DensityOperator rho = as_density(state);
    bool counted = false;
    for (std::size_t part = 0; part < suite.profile.parts(); ++part) {
      double n_closed = 0.0;
      std::optional<double> d_closed;
      if (const auto* psi = std::get_if<PureState>(&state)) {
        n_closed = min_pure(*psi, part);
        d_closed = discord_pure(*psi, part);
      } else if (suite.profile.dim(part) == 2) {
        n_closed = min_qubit(rho, part);
        if (suite.profile.all_qubits()) d_closed = discord_qubit(rho, part);
      } else {
        try {
          n_closed = min_general_nondegenerate(rho, part);
        } catch (const DegenerateMarginal&) {
          ++res.skipped;
          continue;
        }
      }
      counted = true;
      res.n_max_dev = std::max(res.n_max_dev, std::abs(n_closed - min_direct(rho, part, local).value));
      if (d_closed) {
        res.d_max_dev = std::max(*res.d_max_dev, std::abs(*d_closed - discord_direct(rho, part, local).value));
      }
    }
    if (counted) ++res.samples;
  }
  res.pass = res.n_max_dev < kVerifyTol && (!res.d_max_dev || *res.d_max_dev < kVerifyTol);
  return res;
}

bool verify(const std::vector<VerifySuite>& suites, std::uint64_t seed, const SearchConfig& cfg,
            std::ostream& out) {
  out << "minlab verify seed=" << seed << " grid_points=" << cfg.grid_points << " restarts=" << cfg.restarts
      << " threshold=" << format_sci(kVerifyTol) << '\n';
  bool all = true;
  for (const auto& suite : suites) {
    const VerifySuiteResult r = run_verify_suite(suite, seed, cfg);
    out << "suite " << r.name << ": samples=" << r.samples << " skipped=" << r.skipped
        << " N_max_dev=" << format_sci(r.n_max_dev)
        << " D_max_dev=" << (r.d_max_dev ? format_sci(*r.d_max_dev) : std::string("n/a")) << ' '
        << (r.pass ? "PASS" : "FAIL") << '\n';
    all = all && r.pass;
  }
  out << "result: " << (all ? "PASS" : "FAIL") << '\n';
  return all;
}

namespace {

std::uint64_t default_seed() {
  const char* env = std::getenv("MINLAB_SEED");
  if (env == nullptr || *env == '\0') return 1;
  std::uint64_t v = 0;
  const char* end = env + std::char_traits<char>::length(env);
  auto [ptr, ec] = std::from_chars(env, end, v);
  if (ec != std::errc() || ptr != end) throw std::invalid_argument("MINLAB_SEED must be an unsigned integer");
  return v;
}

StateInput named_state(const std::string& name) {
  if (name == "bell") return bell();
  if (name == "w3") return w3();
  if (name == "wt3") return w3_flipped();
  if (name == "ghz-minus") return ghz_minus();
  if (name == "ghz1") return ghz_1();
  if (name.rfind("ghz", 0) == 0 && name.size() > 3) {
    std::size_t n = 0;
    auto [ptr, ec] = std::from_chars(name.data() + 3, name.data() + name.size(), n);
    if (ec == std::errc() && ptr == name.data() + name.size()) {
      if (n > 6) throw std::invalid_argument("named GHZ states are limited to 6 qubits");
      return ghz(n);
    }
  }
  throw std::invalid_argument("unknown state '" + name + "' (bell, w3, wt3, ghz-minus, ghz1, ghz<n>)");
}

Family require_family(const std::string& name) {
  const auto f = parse_family(name);
  if (!f) throw std::invalid_argument("unknown family '" + name + "' (ghz-w, wt-w, ghz-ghzminus, ghz-ghz1)");
  return *f;
}

std::size_t to_part(int l, std::size_t parts) {
  if (l < 1 || static_cast<std::size_t>(l) > parts) throw std::out_of_range("--l must lie in 1.." + std::to_string(parts));
  return static_cast<std::size_t>(l - 1);
}

DimensionProfile parse_profile(const std::string& text) {
  std::vector<std::size_t> dims;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t next = text.find('x', pos);
    const std::string piece = text.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
    std::size_t d = 0;
    auto [ptr, ec] = std::from_chars(piece.data(), piece.data() + piece.size(), d);
    if (ec != std::errc() || ptr != piece.data() + piece.size() || piece.empty()) {
      throw std::invalid_argument("profiles look like 2x3 or 2x2x2");
    }
    dims.push_back(d);
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  DimensionProfile prof(dims);
  if (prof.total() > 64) throw std::invalid_argument("verify profiles are limited to total dimension 64");
  return prof;
}

class OutputTarget {
 public:
  OutputTarget(const std::string& path, std::ostream& fallback) : out_(&fallback) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw IoError("cannot open output file " + path);
      out_ = &file_;
    }
  }
  std::ostream& stream() { return *out_; }
  void close(const std::string& path) {
    if (file_.is_open()) {
      file_.close();
      if (!file_) throw IoError("failed writing " + path);
    }
  }

 private:
  std::ofstream file_;
  std::ostream* out_;
};

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Measurement-induced nonlocality and geometric discord of multipartite states"};
  app.require_subcommand(1);

  std::string state_name, file, family_text, grid_text = "0:1:0.01", out_path, profiles_text;
  std::optional<double> p_value;
  int l = 1;
  bool as_json = false, with_oracle = false;
  std::optional<std::uint64_t> seed;
  SearchConfig cfg;
  std::optional<double> tol;
  int count = 0;
  std::string kind = "both";
  std::size_t rank = 2;

  const auto add_search = [&](CLI::App* sub) {
    sub->add_option("--seed", seed, "RNG seed (default: $MINLAB_SEED or 1)");
    sub->add_option("--grid-points", cfg.grid_points, "coarse search points")->check(CLI::PositiveNumber);
    sub->add_option("--restarts", cfg.restarts, "independent refinement starts")->check(CLI::PositiveNumber);
  };

  auto* measure_cmd = app.add_subcommand("measure", "compute N_l and D_l for one state");
  auto* src = measure_cmd->add_option_group("source");
  src->add_option("--state", state_name, "named state: bell, w3, wt3, ghz-minus, ghz1, ghz<n>");
  src->add_option("--file", file, "JSON state file");
  src->add_option("--family", family_text, "family name, together with --p");
  src->require_option(1);
  measure_cmd->add_option("--p", p_value, "mixing weight for --family");
  measure_cmd->add_option("--l", l, "measured part, 1-based");
  measure_cmd->add_flag("--json", as_json, "machine-readable output");
  measure_cmd->add_flag("--oracle", with_oracle, "also run the direct optimization");
  measure_cmd->add_option("--tol", tol, "oracle convergence threshold");
  add_search(measure_cmd);

  auto* sweep_cmd = app.add_subcommand("sweep", "tabulate a family over a grid of p");
  sweep_cmd->add_option("--family", family_text, "ghz-w, wt-w, ghz-ghzminus, ghz-ghz1")->required();
  sweep_cmd->add_option("--grid", grid_text, "start:end:step (default 0:1:0.01)");
  sweep_cmd->add_option("--l", l, "measured part, 1-based");
  sweep_cmd->add_option("--out", out_path, "output file (default stdout)");
  sweep_cmd->add_flag("--json", as_json, "write JSON instead of CSV");
  sweep_cmd->add_option("--tol", tol, "equality tolerance |N - D| (default 1e-6)");

  auto* threshold_cmd = app.add_subcommand("threshold", "locate the equality boundaries");
  threshold_cmd->add_option("--family", family_text, "family name")->required();
  threshold_cmd->add_option("--l", l, "measured part, 1-based");
  threshold_cmd->add_option("--tol", tol, "bisection tolerance (default 1e-4)");
  threshold_cmd->add_flag("--json", as_json, "machine-readable output");

  auto* verify_cmd = app.add_subcommand("verify", "compare closed forms against the direct optimizer");
  verify_cmd->add_option("--count", count, "samples per suite (default: built-in suites)")->check(CLI::PositiveNumber);
  verify_cmd->add_option("--profiles", profiles_text, "comma-separated profiles such as 2x2x2,2x3");
  verify_cmd->add_option("--kind", kind, "pure, mixed or both (with --profiles)")
      ->check(CLI::IsMember({"pure", "mixed", "both"}));
  verify_cmd->add_option("--rank", rank, "rank of mixed samples")->check(CLI::PositiveNumber);
  verify_cmd->add_option("--out", out_path, "report file (default stdout)");
  verify_cmd->add_option("--tol", tol, "oracle convergence threshold");
  add_search(verify_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (measure_cmd->parsed()) {
      if (tol) cfg.tol = *tol;
      cfg.seed = seed ? *seed : default_seed();
      cfg.validate();
      StateInput state = [&]() -> StateInput {
        if (!state_name.empty()) return named_state(state_name);
        if (!file.empty()) return load_state_file(file);
        if (!p_value) throw std::invalid_argument("--family needs --p");
        return family({require_family(family_text), *p_value});
      }();
      const std::size_t part = to_part(l, profile_of(state).parts());
      print_measure(measure(state, part, cfg, with_oracle), as_json, out);
      return kOk;
    }
    if (sweep_cmd->parsed()) {
      const Family fam = require_family(family_text);
      const Grid grid = parse_grid(grid_text);
      const std::size_t part = to_part(l, 3);
      const double tol_eq = tol.value_or(kDefaultEqualityTol);
      if (!(tol_eq > 0.0)) throw std::invalid_argument("--tol must be positive");
      const auto rows = sweep(fam, grid, part, tol_eq);
      OutputTarget target(out_path, out);
      if (as_json) {
        write_sweep_json(rows, fam, part, tol_eq, target.stream());
      } else {
        write_sweep_csv(rows, target.stream());
      }
      target.close(out_path);
      if (!out_path.empty() && !as_json) {
        std::ofstream gp(out_path + ".gp");
        if (!gp) throw IoError("cannot write plot script " + out_path + ".gp");
        gp << plot_script(out_path, fam);
      }
      return kOk;
    }
    if (threshold_cmd->parsed()) {
      const Family fam = require_family(family_text);
      const std::size_t part = to_part(l, 3);
      const auto bounds = threshold(fam, part, tol.value_or(kDefaultThresholdTol));
      if (as_json) {
        json doc{{"family", std::string(family_name(fam))}, {"l", l}, {"boundaries", bounds}};
        out << doc.dump(2) << '\n';
      } else if (bounds.empty()) {
        out << "no sign change of the ordering condition on (0, 1) for " << family_name(fam) << '\n';
      } else {
        out << "boundaries:";
        for (double b : bounds) out << ' ' << format_number(b);
        out << '\n';
      }
      return kOk;
    }
    if (verify_cmd->parsed()) {
      if (tol) cfg.tol = *tol;
      cfg.validate();
      const std::uint64_t s = seed ? *seed : default_seed();
      std::vector<VerifySuite> suites;
      if (profiles_text.empty()) {
        suites = default_verify_suites();
        if (count > 0) {
          for (auto& suite : suites) suite.count = count;
        }
      } else {
        std::stringstream list(profiles_text);
        std::string item;
        while (std::getline(list, item, ',')) {
          const DimensionProfile prof = parse_profile(item);
          if (rank > prof.total()) throw std::invalid_argument("--rank exceeds the total dimension");
          const int n = count > 0 ? count : 100;
          if (kind != "mixed") suites.push_back({prof, true, 1, n});
          if (kind != "pure") suites.push_back({prof, false, rank, n});
        }
      }
      OutputTarget target(out_path, out);
      const bool ok = verify(suites, s, cfg, target.stream());
      target.close(out_path);
      return ok ? kOk : kNumerical;
    }
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kIo;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kNumerical;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::out_of_range& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kNumerical;
  }
  return kUsage;
}

}  // namespace minlab::cli
