#include <atomic>
#include <cstdlib>
#include <iostream>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "cyclemono/report.hpp"

using namespace cyclemono;

namespace {

std::vector<long> parse_exponents(const std::string& s) {
  std::vector<long> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) throw std::invalid_argument("empty exponent");
    out.push_back(std::stol(tok));
  }
  if (out.size() < 2) throw std::invalid_argument("need at least two exponents");
  return out;
}

std::pair<long, long> parse_range(const std::string& s) {
  auto pos = s.find("..");
  if (pos == std::string::npos) {
    long v = std::stol(s);
    return {v, v};
  }
  return {std::stol(s.substr(0, pos)), std::stol(s.substr(pos + 2))};
}

bool is_min_rotation(const std::vector<long>& t) {
  std::vector<long> rot = t;
  for (size_t r = 1; r < t.size(); ++r) {
    std::rotate(rot.begin(), rot.begin() + 1, rot.end());
    if (rot < t) return false;
  }
  return true;
}

std::vector<std::vector<long>> enumerate_tuples(long nmin, long nmax, long max_mu,
                                                bool dedup_rotations) {
  std::vector<std::vector<long>> out;
  std::vector<long> cur;
  auto rec = [&](auto&& self, long n, long prod) -> void {
    if (static_cast<long>(cur.size()) == n) {
      try {
        Exponents e(cur);
      } catch (const std::invalid_argument&) {
        return;
      }
      if (!dedup_rotations || is_min_rotation(cur)) out.push_back(cur);
      return;
    }
    for (long a = 1; prod * a <= max_mu; ++a) {
      cur.push_back(a);
      self(self, n, prod * a);
      cur.pop_back();
    }
  };
  for (long n = nmin; n <= nmax; ++n) rec(rec, n, 1);
  return out;
}

json chain_to_json(const CubeChain& c) {
  json arr = json::array();
  for (auto& [key, coeff] : c.cells()) {
    json cell;
    cell["coeff"] = int_to_json(coeff);
    cell["full"] = key.full;
    cell["b_mask"] = key.mask;
    json base = json::array();
    for (auto& x : key.base) base.push_back(x.str());
    cell["base"] = base;
    json dirs = json::array();
    for (auto& d : key.dirs) {
      json dir = json::array();
      for (auto& x : d) dir.push_back(x.str());
      dirs.push_back(dir);
    }
    cell["dirs"] = dirs;
    arr.push_back(cell);
  }
  return arr;
}

int cmd_report(const std::string& exps_str, bool as_json, const ReportOptions& opts,
               bool dump_chains) {
  std::vector<long> exps;
  try {
    exps = parse_exponents(exps_str);
  } catch (const std::exception& ex) {
    std::cerr << "invalid exponents: " << ex.what() << "\n";
    return 2;
  }
  SingularityReport rep;
  try {
    rep = build_report(exps, opts);
  } catch (const std::invalid_argument& ex) {
    std::cerr << "invalid input: " << ex.what() << "\n";
    return 2;
  }
  if (dump_chains) {
    Exponents e(exps);
    ChainCalc calc(e);
    json dump = json::array();
    for (long j = 1; j <= calc.d(); ++j) {
      json entry;
      entry["j"] = j;
      entry["cells"] = chain_to_json(calc.chain_X(j, calc.k_max()));
      dump.push_back(entry);
    }
    rep.body["chains"] = dump;
  }
  if (as_json)
    std::cout << rep.body.dump(2) << "\n";
  else
    std::cout << report_text(rep);
  return rep.exit_code;
}

int cmd_batch(const std::string& nrange, long max_mu, bool dedup, bool as_json,
              const ReportOptions& opts) {
  auto [nmin, nmax] = parse_range(nrange);
  auto tuples = enumerate_tuples(nmin, nmax, max_mu, dedup);
  size_t workers = std::thread::hardware_concurrency();
  if (const char* env = std::getenv("CYCLEMONO_THREADS")) {
    long v = std::stol(env);
    if (v >= 1) workers = static_cast<size_t>(v);
  }
  workers = std::max<size_t>(1, std::min(workers, tuples.size()));
  std::atomic<size_t> next{0};
  std::atomic<size_t> failures{0};
  std::mutex out_mutex;
  std::vector<json> failure_reports;
  auto work = [&]() {
    while (true) {
      size_t i = next.fetch_add(1);
      if (i >= tuples.size()) return;
      SingularityReport rep = build_report(tuples[i], opts);
      if (rep.exit_code != 0) {
        failures.fetch_add(1);
        std::lock_guard<std::mutex> lock(out_mutex);
        failure_reports.push_back(rep.body);
      }
    }
  };
  std::vector<std::thread> pool;
  for (size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  if (as_json) {
    json o;
    o["schema"] = 1;
    o["tuples"] = tuples.size();
    o["failures"] = failures.load();
    o["failure_reports"] = failure_reports;
    std::cout << o.dump(2) << "\n";
  } else {
    std::cout << "tuples: " << tuples.size() << ", failures: " << failures.load() << "\n";
    for (auto& f : failure_reports) std::cout << f.dump() << "\n";
  }
  return failures.load() == 0 ? 0 : 3;
}

int cmd_ss(const std::string& exps_str, bool as_json) {
  std::vector<long> exps;
  Exponents* e_ptr = nullptr;
  try {
    exps = parse_exponents(exps_str);
    static Exponents e_local{exps};
    e_ptr = &e_local;
  } catch (const std::exception& ex) {
    std::cerr << "invalid input: " << ex.what() << "\n";
    return 2;
  }
  const Exponents& e = *e_ptr;
  auto inv = invariants(e);
  json o;
  o["schema"] = 1;
  o["exponents"] = exps;
  json pages = json::array();
  {
    json top;
    top["s"] = e.n;
    top["t"] = -1;
    top["rank"] = to_long(inv.d);
    json labels = json::array();
    for (long j = 1; j <= to_long(inv.d); ++j) labels.push_back("X" + std::to_string(j));
    top["labels"] = labels;
    pages.push_back(top);
  }
  auto set_label = [](const SubsetInfo& s) {
    std::string out = "{";
    for (size_t i = 0; i < s.members.size(); ++i)
      out += std::to_string(s.members[i]) + (i + 1 < s.members.size() ? "," : "");
    return out + "}";
  };
  for (long s = d1_s_min(e.n); s <= d1_s_max(e.n); ++s) {
    auto d1 = d1_matrix(e, s);
    json page;
    page["s"] = s;
    page["t"] = e.n - 1 - s;
    page["rank"] = d1.col_sets.size();
    json labels = json::array();
    for (auto& a : d1.col_sets) labels.push_back(set_label(a));
    page["labels"] = labels;
    json below;
    below["s"] = s - 1;
    below["t"] = e.n - 1 - s;
    json blabels = json::array();
    for (auto& b : d1.row_sets) blabels.push_back(set_label(b));
    below["labels_almost_thick"] = blabels;
    json alabels = json::array();
    for (auto& a : thick_family(e.n, s - 1))
      for (long i = 1; i <= a.b; ++i)
        alabels.push_back(set_label(a) + "#" + std::to_string(i));
    below["labels_thick_torus"] = alabels;
    page["below"] = below;
    page["d1_projected"] = matrix_to_json(d1.m);
    auto cert = verify_d1_injective(e, s);
    page["injective"] = cert.injective;
    page["certificate_minor"] = int_to_json(cert.certificate_minor);
    pages.push_back(page);
  }
  if (e.n % 2 == 0) {
    json sph;
    sph["s"] = e.n / 2;
    sph["t"] = e.n / 2 - 1;
    sph["rank"] = 2;
    sph["labels"] = json::array({"S_od", "S_ev"});
    pages.push_back(sph);
  }
  o["pages"] = pages;
  auto filt = xclass_filtration(inv);
  json xc;
  xc["r_max"] = filt.r_max;
  xc["step2_primitive"] = filt.step2_primitive;
  xc["indices"] = vec_to_json(filt.step_indices);
  json bases = json::array();
  for (auto& b : filt.bases) bases.push_back(matrix_to_json(b));
  xc["bases"] = bases;
  o["xclass"] = xc;
  if (as_json)
    std::cout << o.dump(2) << "\n";
  else {
    for (auto& page : o["pages"])
      std::cout << "E1[" << page["s"] << "," << page["t"] << "] rank " << page["rank"] << "\n";
    std::cout << "xclass indices:";
    for (auto& idx : o["xclass"]["indices"]) std::cout << " " << idx;
    std::cout << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"integral monodromy of cycle type singularities"};
  app.require_subcommand(1);

  std::string exps_str, nrange = "2..4";
  long max_mu = 40;
  bool as_json = false, dedup = false, dump_chains = false;
  ReportOptions opts;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_flag("--json", as_json, "emit JSON");
    cmd->add_flag("--with-chains", opts.with_chains, "verify the chain identities");
    cmd->add_flag("--with-ss", opts.with_ss, "verify boundary injectivity and filtration indices");
    cmd->add_option("--seed", opts.seed, "seed for the equality oracle sample points");
    cmd->add_option("--samples", opts.oracle_samples, "oracle sample points per cell");
    cmd->add_option("--budget", opts.budget, "generating-element search budget");
  };

  CLI::App* report = app.add_subcommand("report", "full report for one exponent tuple");
  report->add_option("-e,--exponents", exps_str, "comma-separated exponents")->required();
  report->add_flag("--dump-chains", dump_chains, "dump the top cycles as cell lists");
  add_common(report);

  CLI::App* batch = app.add_subcommand("batch", "sweep all admissible tuples");
  batch->add_option("--n", nrange, "range of variable counts, e.g. 2..4");
  batch->add_option("--max-mu", max_mu, "bound on the product of the exponents");
  batch->add_flag("--dedup-rotations", dedup, "keep one representative per cyclic rotation class");
  add_common(batch);

  CLI::App* ss = app.add_subcommand("ss", "page dump of the boundary lattices");
  ss->add_option("-e,--exponents", exps_str, "comma-separated exponents")->required();
  ss->add_flag("--json", as_json, "emit JSON");

  CLI11_PARSE(app, argc, argv);

  try {
    if (report->parsed()) return cmd_report(exps_str, as_json, opts, dump_chains);
    if (batch->parsed()) return cmd_batch(nrange, max_mu, dedup, as_json, opts);
    if (ss->parsed()) return cmd_ss(exps_str, as_json);
  } catch (const std::invalid_argument& ex) {
    std::cerr << "invalid input: " << ex.what() << "\n";
    return 2;
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 3;
  }
  return 0;
}
