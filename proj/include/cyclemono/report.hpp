#pragma once

#include <chrono>
#include <string>

#include <nlohmann/json.hpp>

#include "cyclemono/chaincalc.hpp"
#include "cyclemono/monodromy.hpp"
#include "cyclemono/specseq.hpp"

namespace cyclemono {

using nlohmann::json;

// integers serialize as JSON numbers when they fit in 64 bits and as
// decimal strings beyond that, keeping the output exact
inline json int_to_json(const Int& v) {
  if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max())
    return static_cast<std::int64_t>(v);
  return v.str();
}

inline json vec_to_json(const std::vector<Int>& v) {
  json a = json::array();
  for (auto& x : v) a.push_back(int_to_json(x));
  return a;
}

inline json poly_to_json(const IntPoly& p) {
  json o;
  o["coeffs"] = vec_to_json(p.coeffs());
  o["pretty"] = p.pretty();
  return o;
}

inline json matrix_to_json(const IntMat& m) {
  json o;
  o["rows"] = m.rows();
  o["cols"] = m.cols();
  json data = json::array();
  for (size_t i = 0; i < m.rows(); ++i)
    for (size_t j = 0; j < m.cols(); ++j) data.push_back(int_to_json(m(i, j)));
  o["data"] = data;
  return o;
}

struct ReportOptions {
  bool with_chains = false;
  bool with_ss = false;
  std::uint64_t seed = 1;
  int oracle_samples = 1;
  unsigned long budget = 200000;
};

struct SingularityReport {
  std::vector<long> exponents;
  json body;   // the full serialized report
  int exit_code = 0;  // 0 pass, 3 verification failure
};

inline SingularityReport build_report(const std::vector<long>& exps, const ReportOptions& opts) {
  using clock = std::chrono::steady_clock;
  SingularityReport rep;
  rep.exponents = exps;
  json& o = rep.body;
  o["schema"] = 1;
  o["exponents"] = exps;
  json verdicts;
  bool any_fail = false;
  auto stamp = [&](const char* key, clock::time_point t0) {
    o["timings_ms"][key] =
        std::chrono::duration_cast<std::chrono::milliseconds>(clock::now() - t0).count();
  };

  Exponents e(exps);  // throws on degenerate input; caller maps to exit 2
  auto t0 = clock::now();
  SingularityInvariants inv = invariants(e);
  o["invariants"]["d"] = int_to_json(inv.d);
  o["invariants"]["mu"] = int_to_json(inv.mu);
  o["invariants"]["v"] = vec_to_json(inv.v);
  {
    json w = json::array();
    for (auto& vj : inv.v) w.push_back(vj.str() + "/" + inv.d.str());
    o["invariants"]["weights"] = w;
  }
  o["invariants"]["g"] = int_to_json(inv.g);
  o["invariants"]["b"] = int_to_json(inv.b);
  o["invariants"]["charpoly"] = poly_to_json(inv.charpoly);
  {
    json pred = json::array();
    for (auto& [mult, p] : predicted_decomposition(inv)) {
      json entry;
      entry["multiplicity"] = mult;
      entry["block"] = poly_to_json(p);
      pred.push_back(entry);
    }
    o["predicted_decomposition"] = pred;
  }
  stamp("invariants", t0);

  t0 = clock::now();
  try {
    MonodromyModel model = build_monodromy(inv);
    o["monodromy"] = matrix_to_json(model.hmon.matrix());
    o["monodromy_order"] = model.hmon.order();
    if (e.n % 2 == 0) o["relation_c"] = int_to_json(model.c);
    stamp("monodromy", t0);

    t0 = clock::now();
    try {
      auto res = verify_theorem13(model);
      o["witness"] = matrix_to_json(res.witness.matrix);
      o["target"] = matrix_to_json(res.target.matrix());
      verdicts["thm13"] = "pass";
    } catch (const std::exception& ex) {
      verdicts["thm13"] = std::string("fail: ") + ex.what();
      any_fail = true;
    }
    stamp("thm13", t0);

    if (e.n % 2 == 0) {
      t0 = clock::now();
      auto check = cooper_wrong_claim_check(model);
      json wc;
      wc["charpoly_equal"] = check.charpoly_equal;
      wc["separated"] = check.separated;
      wc["snf_true"] = vec_to_json(check.snf_true);
      wc["snf_wrong"] = vec_to_json(check.snf_wrong);
      o["wrong_claim_check"] = wc;
      if (!check.charpoly_equal || !check.separated) {
        verdicts["wrong_claim"] = "fail: expected separation did not hold";
        any_fail = true;
      } else {
        verdicts["wrong_claim"] = "pass";
      }
      stamp("wrong_claim", t0);
    } else {
      verdicts["wrong_claim"] = "skipped: odd n";
    }
  } catch (const std::exception& ex) {
    verdicts["thm13"] = std::string("fail: monodromy construction: ") + ex.what();
    any_fail = true;
  }

  if (opts.with_chains) {
    t0 = clock::now();
    ChainCalc calc(e);
    auto rep33 = calc.verify_thm33(opts.seed, opts.oracle_samples);
    json checks = json::array();
    for (auto& chk : rep33.checks) {
      if (chk.exact_pass && !chk.rewrite_gap) continue;  // record only anomalies
      json c;
      c["name"] = chk.name;
      c["exact_pass"] = chk.exact_pass;
      c["oracle_pass"] = chk.oracle_pass;
      c["residual_cells"] = chk.residual_cells;
      c["rewrite_gap"] = chk.rewrite_gap;
      checks.push_back(c);
    }
    o["thm33_anomalies"] = checks;
    o["thm33_checks_run"] = rep33.checks.size();
    if (rep33.any_rewrite_gap) {
      verdicts["thm33"] = "fail: rewrite gap, the canonical form needs extension";
      any_fail = true;
    } else if (!rep33.all_pass) {
      verdicts["thm33"] = "fail: chain identity violated";
      any_fail = true;
    } else {
      verdicts["thm33"] = "pass";
    }
    stamp("thm33", t0);
  } else {
    verdicts["thm33"] = "skipped: run with --with-chains";
  }

  if (opts.with_ss) {
    t0 = clock::now();
    bool ok = true;
    std::string why;
    if (d1_s_min(e.n) > d1_s_max(e.n)) {
      verdicts["d1_injectivity"] = "skipped: no valid bidegrees for n = " + std::to_string(e.n);
    } else {
      for (long s = d1_s_min(e.n); s <= d1_s_max(e.n) && ok; ++s) {
        auto cert = verify_d1_injective(e, s);
        if (!cert.injective || !cert.replay_ok) {
          ok = false;
          why = "s = " + std::to_string(s);
        }
      }
      verdicts["d1_injectivity"] = ok ? "pass" : ("fail: " + why);
      any_fail = any_fail || !ok;
    }
    auto filt = xclass_filtration(inv);
    json xc;
    xc["r_max"] = filt.r_max;
    xc["step2_primitive"] = filt.step2_primitive;
    xc["indices"] = vec_to_json(filt.step_indices);
    o["xclass"] = xc;
    if (filt.step2_primitive && filt.indices_all_d && filt.recursion_ok) {
      verdicts["xclass_indices"] = "pass";
    } else {
      verdicts["xclass_indices"] = "fail";
      any_fail = true;
    }
    auto hn1 = assemble_Hn1(inv);
    o["hn1"]["rank"] = hn1.rank;
    o["hn1"]["labels"] = hn1.labels;
    if (hn1.even) {
      o["hn1"]["relation_c"] = int_to_json(hn1.relation_c);
      o["hn1"]["gamma_ev_coeff"] = int_to_json(hn1.gamma_ev_coeff);
    }
    stamp("specseq", t0);
  } else {
    verdicts["d1_injectivity"] = "skipped: run with --with-ss";
    verdicts["xclass_indices"] = "skipped: run with --with-ss";
  }

  o["verdicts"] = verdicts;
  rep.exit_code = any_fail ? 3 : 0;
  return rep;
}

// human-readable one-screen summary
inline std::string report_text(const SingularityReport& rep) {
  std::ostringstream os;
  const json& o = rep.body;
  os << "exponents: (";
  for (size_t i = 0; i < rep.exponents.size(); ++i)
    os << rep.exponents[i] << (i + 1 < rep.exponents.size() ? "," : "");
  os << ")\n";
  os << "d = " << o["invariants"]["d"] << ", mu = " << o["invariants"]["mu"]
     << ", g = " << o["invariants"]["g"] << ", b = " << o["invariants"]["b"] << "\n";
  os << "char poly: " << o["invariants"]["charpoly"]["pretty"].get<std::string>() << "\n";
  os << "decomposition:";
  for (auto& entry : o["predicted_decomposition"])
    os << " " << entry["multiplicity"] << " x Or(" << entry["block"]["pretty"].get<std::string>()
       << ")";
  os << "\n";
  os << "verdicts:";
  for (auto& [k, v] : o["verdicts"].items()) os << " " << k << "=" << v.get<std::string>();
  os << "\n";
  return os.str();
}

}  // namespace cyclemono
