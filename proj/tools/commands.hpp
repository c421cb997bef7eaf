// Copyright 2026 The ppovm Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Subcommands of the `ppovm` tool. Every command writes its report to `out`,
// diagnostics to `err`, and returns the process exit code:
//   0 success, 1 domain/invariant failure, 2 I/O or parse failure.

#ifndef PPOVM_TOOLS_COMMANDS_HPP
#define PPOVM_TOOLS_COMMANDS_HPP

#include <cstdint>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ppovm/io.hpp"
#include "ppovm/ppovm.hpp"

namespace ppovm::cli {

using io::json;

enum ExitCode : int { kOk = 0, kDomainFailure = 1, kIoFailure = 2 };

enum class Format { Json, Table };

struct RunConfig {
  double tol = kDefaultTol;
  std::uint64_t seed = 0;
  std::uint64_t shots = 0;
  Format format = Format::Json;
  std::string out;  // empty: stdout
  unsigned workers = 1;
};

// Runs `body`, mapping exceptions onto exit codes.
inline int guarded(std::ostream& err, const std::function<int()>& body) {
  try {
    return body();
  } catch (const io::FormatError& e) {
    err << "error: " << e.what() << '\n';
    return kIoFailure;
  } catch (const json::exception& e) {
    err << "error: malformed input: " << e.what() << '\n';
    return kIoFailure;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kDomainFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kDomainFailure;
  }
}

namespace detail {

inline std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

inline json checks_to_json(const std::vector<Check>& checks) {
  json arr = json::array();
  for (const auto& c : checks) {
    arr.push_back({{"name", c.name}, {"residual", c.residual}, {"threshold", c.threshold}, {"pass", c.pass}});
  }
  return arr;
}

inline void print_checks(std::ostream& os, const std::vector<Check>& checks) {
  for (const auto& c : checks) {
    os << "  " << (c.pass ? "PASS " : "FAIL ") << c.name << " residual " << fmt(c.residual)
       << " (threshold " << fmt(c.threshold) << ")\n";
  }
}

inline void print_matrix(std::ostream& os, const ComplexMatrix& m) {
  const double dust = 1e-12 * std::max(1.0, max_abs(m));
  auto clean = [dust](double x) { return std::abs(x) < dust ? 0.0 : x; };
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    os << "   ";
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      const double re = clean(m(r, c).real());
      const double im = clean(m(r, c).imag());
      os << ' ' << fmt(re);
      if (im != 0.0) os << (im < 0 ? "-" : "+") << fmt(std::abs(im)) << 'i';
    }
    os << '\n';
  }
}

// Writes a produced document to --out, or to `out` when no path is set.
inline void emit_document(const RunConfig& cfg, const json& doc, std::ostream& out) {
  if (cfg.out.empty()) {
    out << doc.dump(2) << '\n';
  } else {
    io::write_json_file(cfg.out, doc);
  }
}

inline void emit_report(const RunConfig& cfg, const json& report, std::ostream& os,
                        const std::function<void(std::ostream&)>& table) {
  if (cfg.format == Format::Json) {
    os << report.dump(2) << '\n';
  } else {
    table(os);
  }
}

}  // namespace detail

// PPOVM from either a ppovm document or a couples document.
inline Ppovm load_ppovm(const std::string& path, double tol = kDefaultTol) {
  const json j = io::read_json_file(path);
  if (j.is_object() && j.contains("couples")) {
    const io::CouplesDoc doc = io::couples_from_json(j);
    return build_ppovm(doc.couples, doc.d, tol);
  }
  io::PpovmDoc doc = io::ppovm_doc_from_json(j);
  return Ppovm(doc.d, std::move(doc.effects), tol);
}

inline KrausChannel load_channel(const std::string& path) {
  return io::channel_from_json(io::read_json_file(path));
}

// ---------------------------------------------------------------------------
// validate
// ---------------------------------------------------------------------------

inline int cmd_validate(const RunConfig& cfg, const std::string& path, const std::string& kind,
                        std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const json j = io::read_json_file(path);
    std::vector<Check> checks;
    std::optional<ComplexMatrix> norm_state;
    if (kind == "state") {
      checks = density_checks(io::state_from_json(j), cfg.tol);
    } else if (kind == "povm") {
      checks = povm_checks(io::povm_from_json(j).second, cfg.tol);
    } else if (kind == "channel") {
      const io::ChannelDoc doc = io::channel_doc_from_json(j);
      if (doc.kind == "kraus") {
        const KrausChannel ch(doc.ops, cfg.tol);
        checks.push_back({"square", 0.0, 0.0, ch.dim_in() == ch.dim_out()});
        const double tp = ch.tp_residual();
        checks.push_back({"trace_preserving", tp, cfg.tol, tp <= cfg.tol});
      } else {
        checks = process_state_checks(doc.choi, doc.d, cfg.tol);
      }
    } else if (kind == "ppovm") {
      Eigen::Index d = 0;
      std::vector<ComplexMatrix> effects;
      if (j.is_object() && j.contains("couples")) {
        const io::CouplesDoc doc = io::couples_from_json(j);
        double wsum = 0.0;
        for (const auto& c : doc.couples) wsum += c.weight();
        checks.push_back({"weight_sum", std::abs(wsum - 1.0), cfg.tol, std::abs(wsum - 1.0) <= cfg.tol});
        if (!checks.back().pass) throw Error(ErrorCode::InvalidParameter, "couple weights do not sum to 1");
        d = doc.d;
        effects = build_ppovm(doc.couples, d, cfg.tol).matrices();
      } else {
        const io::PpovmDoc doc = io::ppovm_doc_from_json(j);
        d = doc.d;
        for (const auto& e : doc.effects) effects.push_back(e.matrix);
      }
      checks = ppovm_checks(effects, d, cfg.tol);
      if (all_pass(checks)) {
        ComplexMatrix sum = ComplexMatrix::Zero(d * d, d * d);
        for (const auto& e : effects) sum += e;
        norm_state = transpose(partial_trace(sum, d, d, Factor::Second) / static_cast<double>(d));
      }
    } else {
      throw io::FormatError("unknown kind '" + kind + "' (expected state|povm|channel|ppovm)");
    }

    const bool valid = all_pass(checks);
    json report{{"kind", kind}, {"path", path}, {"valid", valid}, {"checks", detail::checks_to_json(checks)}};
    if (norm_state) report["norm_state"] = io::to_json(*norm_state);
    detail::emit_report(cfg, report, out, [&](std::ostream& os) {
      os << kind << ' ' << path << ": " << (valid ? "valid" : "INVALID") << '\n';
      detail::print_checks(os, checks);
      if (norm_state) {
        os << "  norm state rho:\n";
        detail::print_matrix(os, *norm_state);
      }
    });
    return valid ? kOk : kDomainFailure;
  });
}

// ---------------------------------------------------------------------------
// convert
// ---------------------------------------------------------------------------

// The converted document goes to --out (report on `out`) or, without --out,
// to `out` with the report on `err`.
inline int cmd_convert(const RunConfig& cfg, const std::string& path, const std::string& direction,
                       std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const io::ChannelDoc doc = io::channel_doc_from_json(io::read_json_file(path));
    json converted;
    json report{{"direction", direction}};
    std::vector<std::string> warnings;
    if (direction == "kraus2choi") {
      if (doc.kind != "kraus") throw io::FormatError("kraus2choi expects a Kraus channel document");
      const KrausChannel ch(doc.ops, cfg.tol);
      if (ch.dim_in() != ch.dim_out()) throw Error(ErrorCode::DimensionMismatch, "channel is not square");
      const ProcessState omega = choi_of_channel(ch);
      converted = io::choi_to_json(omega);
      if (!ch.trace_preserving()) {
        warnings.push_back("channel is not trace preserving (residual " + detail::fmt(ch.tp_residual()) +
                           "); Choi operator violates Tr_2 = I");
        report["roundtrip_residual"] = nullptr;
      } else {
        const ProcessState valid(omega.d(), omega.matrix(), std::max(cfg.tol, 1e-8));
        report["roundtrip_residual"] =
            max_abs(choi_of_channel(channel_of_choi(valid)).matrix() - omega.matrix());
      }
    } else if (direction == "choi2kraus") {
      if (doc.kind != "choi") throw io::FormatError("choi2kraus expects a Choi channel document");
      const ProcessState omega(doc.d, doc.choi, cfg.tol);
      const KrausChannel ch = channel_of_choi(omega);
      converted = io::to_json(ch);
      report["kraus_count"] = ch.kraus().size();
      report["roundtrip_residual"] = max_abs(choi_of_channel(ch).matrix() - omega.matrix());
    } else {
      throw io::FormatError("unknown direction '" + direction + "' (expected kraus2choi|choi2kraus)");
    }
    report["warnings"] = warnings;
    for (const auto& w : warnings) err << "warning: " << w << '\n';

    std::ostream& report_stream = cfg.out.empty() ? err : out;
    detail::emit_document(cfg, converted, out);
    detail::emit_report(cfg, report, report_stream, [&](std::ostream& os) {
      os << "converted " << path << " (" << direction << ")";
      if (report["roundtrip_residual"].is_number()) {
        os << ", round-trip residual " << detail::fmt(report["roundtrip_residual"].get<double>());
      }
      os << '\n';
    });
    return kOk;
  });
}

// ---------------------------------------------------------------------------
// probs
// ---------------------------------------------------------------------------

inline int cmd_probs(const RunConfig& cfg, const std::string& ppovm_path, const std::string& channel_path,
                     std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Ppovm pp = load_ppovm(ppovm_path, cfg.tol);
    const KrausChannel ch = load_channel(channel_path);
    const std::vector<double> p = outcome_probabilities(pp, ch, cfg.tol);
    double sum = 0.0;
    json table = json::array();
    for (std::size_t a = 0; a < p.size(); ++a) {
      table.push_back({{"label", pp[a].label}, {"probability", p[a]}});
      sum += p[a];
    }
    const json report{{"d", pp.d()}, {"probabilities", table}, {"sum", sum}};
    detail::emit_report(cfg, report, out, [&](std::ostream& os) {
      for (std::size_t a = 0; a < p.size(); ++a) os << pp[a].label << '\t' << detail::fmt(p[a]) << '\n';
      os << "sum\t" << detail::fmt(sum) << '\n';
    });
    return kOk;
  });
}

// ---------------------------------------------------------------------------
// tomo
// ---------------------------------------------------------------------------

struct TomoInputs {
  std::string ppovm_path;
  std::string channel_path;  // with exact = true
  bool exact = false;
  std::string counts_path;
  std::string truth_path;  // optional
  int iters = 50;
};

inline int cmd_tomo(const RunConfig& cfg, const TomoInputs& in, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Ppovm pp = load_ppovm(in.ppovm_path, cfg.tol);
    std::vector<double> probs;
    std::optional<ProcessState> truth;
    std::string source;
    if (in.exact) {
      if (in.channel_path.empty()) throw io::FormatError("--exact requires --channel");
      const KrausChannel ch = load_channel(in.channel_path);
      probs = outcome_probabilities(pp, ch, cfg.tol);
      truth = choi_of_channel(ch);
      source = "exact:" + in.channel_path;
    } else {
      if (in.counts_path.empty()) throw io::FormatError("tomo needs --counts or --channel with --exact");
      probs = frequencies(pp, io::shot_record_from_json(io::read_json_file(in.counts_path)));
      source = "counts:" + in.counts_path;
    }
    if (!in.truth_path.empty()) truth = choi_of_channel(load_channel(in.truth_path));

    const TomographyResult result = linear_inversion(pp, probs, truth, in.iters);
    std::vector<std::string> warnings;
    if (result.ic_deficient) {
      warnings.push_back("PPOVM is not informationally complete: deficiency = " +
                         std::to_string(result.ic.deficiency) + "; minimum-norm solution returned");
    }
    if (!result.projection_converged) {
      warnings.push_back("PSD projection stopped after " + std::to_string(result.projection_iterations) +
                         " iterations");
    }
    for (const auto& w : warnings) err << "warning: " << w << '\n';

    json report{{"source", source},
                {"ic", io::to_json(result.ic)},
                {"deficiency", result.ic.deficiency},
                {"residual", result.residual},
                {"warnings", warnings}};
    report["hs_error"] = result.hs_error ? json(*result.hs_error) : json(nullptr);
    if (cfg.out.empty()) {
      report["result"] = io::to_json(result);
    } else {
      io::write_json_file(cfg.out, io::to_json(result));
      report["result_path"] = cfg.out;
    }
    detail::emit_report(cfg, report, out, [&](std::ostream& os) {
      os << "informationally complete: " << (result.ic.complete ? "yes" : "no")
         << " (deficiency = " << result.ic.deficiency << ")\n";
      os << "residual: " << detail::fmt(result.residual) << '\n';
      if (result.hs_error) os << "HS error: " << detail::fmt(*result.hs_error) << '\n';
      os << "reconstructed process state:\n";
      detail::print_matrix(os, result.omega_projected.matrix());
    });
    return kOk;
  });
}

// ---------------------------------------------------------------------------
// simulate
// ---------------------------------------------------------------------------

inline int cmd_simulate(const RunConfig& cfg, const std::string& channel_path, const std::string& ppovm_path,
                        std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (cfg.shots == 0) throw Error(ErrorCode::InvalidParameter, "simulate needs --shots >= 1");
    const KrausChannel ch = load_channel(channel_path);
    const Ppovm pp = load_ppovm(ppovm_path, cfg.tol);
    const Realization real = realize(pp, cfg.tol);
    const ShotRecord rec = simulate_counts(ch, real, cfg.shots, cfg.seed, cfg.workers);
    const json doc = io::to_json(rec);
    if (cfg.format == Format::Table && cfg.out.empty()) {
      for (const auto& [label, n] : rec.counts) out << label << '\t' << n << '\n';
    } else {
      detail::emit_document(cfg, doc, out);
    }
    return kOk;
  });
}

// ---------------------------------------------------------------------------
// discriminate
// ---------------------------------------------------------------------------

inline int cmd_discriminate(const RunConfig& cfg, const std::string& u_path, const std::string& v_path,
                            std::optional<int> copies, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const ComplexMatrix u = io::unitary_from_json(io::read_json_file(u_path));
    const ComplexMatrix v = io::unitary_from_json(io::read_json_file(v_path));
    const double ov = overlap(u, v);
    const bool necessary = necessary_condition(u, v);
    const PhaseSet ph = relative_phases(u, v);
    const bool hull = zero_in_hull(ph);
    const bool identical = dedup_phases(ph.phases).size() <= 1;

    json report{{"d", u.rows()},
                {"overlap", ov},
                {"necessary", necessary},
                {"zero_in_hull", hull},
                {"phases", ph.phases},
                {"max_gap", max_circular_gap(ph)}};
    report["status"] = identical ? "AlwaysIndistinguishable" : (hull ? "PerfectlyDiscriminable" : "NotPerfectlyDiscriminable");
    std::optional<DiscriminationPlan> plan;
    if (hull) {
      plan = build_plan(u, v);
      report["plan"] = io::to_json(*plan);
    } else {
      report["plan"] = nullptr;
    }
    std::optional<CopiesResult> cr;
    if (copies) {
      cr = min_copies_of_phases(ph, *copies);
      report["min_copies"] = cr->copies ? json(*cr->copies) : json(nullptr);
      report["copies_status"] = to_string(cr->status);
    } else {
      report["min_copies"] = nullptr;
    }
    detail::emit_report(cfg, report, out, [&](std::ostream& os) {
      os << "overlap |Tr U^dag V| = " << detail::fmt(ov) << '\n';
      os << "necessary condition (<= d-1): " << (necessary ? "holds" : "fails") << '\n';
      os << "zero in hull of eigenvalues: " << (hull ? "yes" : "no") << '\n';
      os << "status: " << report["status"].get<std::string>() << '\n';
      if (plan) {
        os << "probe:";
        for (Eigen::Index k = 0; k < plan->probe.size(); ++k) {
          os << ' ' << detail::fmt(plan->probe(k).real()) << (plan->probe(k).imag() < 0 ? "-" : "+")
             << detail::fmt(std::abs(plan->probe(k).imag())) << 'i';
        }
        os << "\nerror rates: " << detail::fmt(plan->error_rates.first) << ", "
           << detail::fmt(plan->error_rates.second) << '\n';
      }
      if (cr) {
        os << "min copies: " << (cr->copies ? std::to_string(*cr->copies) : std::string("none")) << " ("
           << to_string(cr->status) << ")\n";
      }
    });
    return kOk;
  });
}

// ---------------------------------------------------------------------------
// gen
// ---------------------------------------------------------------------------

struct GenOptions {
  std::string what;
  Eigen::Index d = 2;
  double p = 0.0;
  std::string gate = "z";
  double angle = 0.0;
  Eigen::Index target = 0;
};

inline ComplexMatrix named_gate(const std::string& gate, Eigen::Index d, double angle) {
  if (gate == "clock") {
    ComplexMatrix u = ComplexMatrix::Zero(d, d);
    for (Eigen::Index k = 0; k < d; ++k) u(k, k) = std::polar(1.0, 2.0 * std::numbers::pi * k / d);
    return u;
  }
  if (gate == "phase") {
    ComplexMatrix u = identity(d);
    u(d - 1, d - 1) = std::polar(1.0, angle);
    return u;
  }
  if (gate == "identity") return identity(d);
  if (d != 2) throw Error(ErrorCode::InvalidParameter, "gate '" + gate + "' is defined for d = 2 only");
  if (gate == "x") return schemes::pauli_x();
  if (gate == "y") return schemes::pauli_y();
  if (gate == "z") return schemes::pauli_z();
  if (gate == "h") return (schemes::pauli_x() + schemes::pauli_z()) / std::sqrt(2.0);
  throw io::FormatError("unknown gate '" + gate + "' (expected x|y|z|h|phase|clock|identity)");
}

inline const char* kGenTargets =
    "pauli-probe, pauli-probe-couples, six-state, six-state-couples, identity-vs-contraction, "
    "identity-vs-contraction-couples, identity, contraction, depolarizing, unitary";

inline int cmd_gen(const RunConfig& cfg, const GenOptions& g, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    json doc;
    if (g.what == "pauli-probe") {
      doc = io::to_json(schemes::pauli_probe_ppovm());
    } else if (g.what == "pauli-probe-couples") {
      doc = io::couples_to_json({schemes::pauli_probe_couple()});
    } else if (g.what == "six-state") {
      doc = io::to_json(schemes::six_state_ppovm());
    } else if (g.what == "six-state-couples") {
      doc = io::couples_to_json(schemes::six_state_couples());
    } else if (g.what == "identity-vs-contraction") {
      doc = io::to_json(schemes::identity_vs_contraction_ppovm());
    } else if (g.what == "identity-vs-contraction-couples") {
      doc = io::couples_to_json({schemes::identity_vs_contraction_couple()});
    } else if (g.what == "identity") {
      doc = io::to_json(make_standard(standard::Identity{}, g.d));
    } else if (g.what == "contraction") {
      if (g.target < 0 || g.target >= g.d) throw Error(ErrorCode::InvalidParameter, "--target out of range");
      doc = io::to_json(make_standard(standard::Contraction{basis_ket(g.d, g.target)}, g.d));
    } else if (g.what == "depolarizing") {
      doc = io::to_json(make_standard(standard::Depolarizing{g.p}, g.d));
    } else if (g.what == "unitary") {
      doc = io::to_json(make_standard(standard::Unitary{named_gate(g.gate, g.d, g.angle)}, g.d));
    } else {
      throw io::FormatError("unknown gen target '" + g.what + "' (expected " + kGenTargets + ")");
    }
    detail::emit_document(cfg, doc, out);
    return kOk;
  });
}

}  // namespace ppovm::cli

#endif  // PPOVM_TOOLS_COMMANDS_HPP
