// SPDX-License-Identifier: Apache-2.0

// Command-line front end. Talks to the library only through riley_c.h.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "riley/riley_c.h"

namespace {

struct KnotSelector {
  std::vector<long> pq;
  std::vector<long> cf;
  std::vector<long> double_twist;
};

struct Common {
  KnotSelector knot;
  unsigned digits = 50;
  std::optional<double> tol;
  std::string out;
  std::string cache_dir;
};

struct Failure {
  riley_status status;
  std::string message;
};

using Context = std::unique_ptr<riley_context, decltype(&riley_context_destroy)>;
using Knot = std::unique_ptr<riley_knot, decltype(&riley_knot_destroy)>;

void check(riley_context* ctx, riley_status s) {
  if (s != RILEY_OK) throw Failure{s, riley_last_error(ctx)};
}

std::string take(char* s) {
  std::string out(s ? s : "");
  riley_string_free(s);
  return out;
}

void add_knot_options(CLI::App* cmd, KnotSelector& k) {
  cmd->add_option("--pq", k.pq, "knot K(p, q)")->expected(2)->delimiter(',');
  cmd->add_option("--cf", k.cf, "continued fraction a1,a2,...")->delimiter(',');
  cmd->add_option("--double-twist", k.double_twist, "double-twist knot C(k, m)")
      ->expected(2)
      ->delimiter(',');
}

void add_common_options(CLI::App* cmd, Common& c, bool knot) {
  if (knot) add_knot_options(cmd, c.knot);
  cmd->add_option("--digits", c.digits, "working precision in decimal digits")
      ->check(CLI::Range(30u, 2000u));
  cmd->add_option("--tol", c.tol, "emission tolerance (recheck uses its square)");
  cmd->add_option("--out", c.out, "write output to this file instead of stdout");
  cmd->add_option("--cache-dir", c.cache_dir, "cache directory for Riley systems")
      ->envname("RILEY_CACHE_DIR");
}

Context make_context(const Common& c) {
  riley_context* raw = nullptr;
  if (riley_context_create(&raw) != RILEY_OK) throw Failure{RILEY_E_INTERNAL, "out of memory"};
  Context ctx(raw, riley_context_destroy);
  check(raw, riley_context_set_digits(raw, c.digits));
  if (c.tol) check(raw, riley_context_set_tolerance(raw, *c.tol));
  if (!c.cache_dir.empty()) check(raw, riley_context_set_cache_dir(raw, c.cache_dir.c_str()));
  return ctx;
}

Knot make_knot(riley_context* ctx, const KnotSelector& k) {
  int chosen = !k.pq.empty() + !k.cf.empty() + !k.double_twist.empty();
  if (chosen != 1)
    throw Failure{RILEY_E_INVALID_ARGUMENT,
                  "exactly one of --pq, --cf, --double-twist is required"};
  riley_knot* raw = nullptr;
  if (!k.pq.empty()) {
    check(ctx, riley_knot_from_pq(ctx, k.pq[0], k.pq[1], &raw));
  } else if (!k.cf.empty()) {
    check(ctx, riley_knot_from_cf(ctx, k.cf.data(), k.cf.size(), &raw));
  } else {
    int ambiguous = 0;
    check(ctx, riley_knot_from_double_twist(ctx, k.double_twist[0], k.double_twist[1], &raw,
                                            &ambiguous));
    if (ambiguous)
      std::cerr << "note: C(2, +-2) follows the printed double-twist formula\n";
  }
  return Knot(raw, riley_knot_destroy);
}

void emit(const Common& c, const std::string& text) {
  if (c.out.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream f(c.out, std::ios::binary);
  if (!f) throw Failure{RILEY_E_IO, "cannot open output file " + c.out};
  f << text;
  if (!text.empty() && text.back() != '\n') f << '\n';
  if (!f) throw Failure{RILEY_E_IO, "cannot write output file " + c.out};
}

int exit_code(riley_status s) {
  if (s == RILEY_OK) return 0;
  return riley_status_is_numerical(s) ? 2 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Riley polynomials, real branches and surgery-slope certificates for 2-bridge knots"};
  app.require_subcommand(1);

  Common poly_c, trace_c, slope_c, cert_c, report_c, transfer_c, self_c;
  std::string branch = "t+", t_text, u_text, slope_text;
  std::vector<std::string> samples;
  std::vector<long> base{3, 1, 2}, twists;
  std::vector<int> eps;
  std::vector<std::string> source{"-4", "8"};
  std::optional<int> d_only;
  long max_p = 13;

  auto* poly = app.add_subcommand("poly", "print the canonical serialization of P");
  add_common_options(poly, poly_c, true);

  auto* trace = app.add_subcommand("trace", "trace a real branch of P = 0 and write CSV");
  add_common_options(trace, trace_c, true);
  trace->add_option("--branch", branch, "psi, phi, t+, t-, u+ or u-");

  auto* slope = app.add_subcommand("slope", "slope of the point (t, u)");
  add_common_options(slope, slope_c, true);
  slope->add_option("--t", t_text)->required();
  slope->add_option("--u", u_text)->required();

  auto* certify = app.add_subcommand("certify", "certificate JSON for one rational slope");
  add_common_options(certify, cert_c, true);
  certify->add_option("--slope", slope_text)->required();

  auto* report = app.add_subcommand("report", "interval report JSON for sample slopes");
  add_common_options(report, report_c, true);
  report->add_option("--samples", samples, "comma-separated rational slopes")
      ->delimiter(',')
      ->required();

  auto* transfer = app.add_subcommand("transfer", "transfer a slope interval along a Wang family");
  add_common_options(transfer, transfer_c, false);
  transfer->add_option("--base", base, "base continued fraction")->delimiter(',');
  transfer->add_option("--c", twists, "2n twist parameters")->delimiter(',');
  transfer->add_option("--eps", eps, "2n + 1 signs")->delimiter(',');
  transfer->add_option("--d", d_only, "transfer by d alone");
  transfer->add_option("--source", source, "source interval lo,hi")->expected(2)->delimiter(',');

  auto* selftest = app.add_subcommand("selftest", "exact identity suite");
  add_common_options(selftest, self_c, false);
  selftest->add_option("--max-p", max_p, "largest p checked");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (*poly) {
      Context ctx = make_context(poly_c);
      Knot k = make_knot(ctx.get(), poly_c.knot);
      char* out = nullptr;
      check(ctx.get(), riley_poly_text(ctx.get(), k.get(), &out, nullptr));
      emit(poly_c, take(out));
    } else if (*trace) {
      Context ctx = make_context(trace_c);
      Knot k = make_knot(ctx.get(), trace_c.knot);
      char* out = nullptr;
      check(ctx.get(), riley_trace_csv(ctx.get(), k.get(), branch.c_str(), &out));
      emit(trace_c, take(out));
    } else if (*slope) {
      Context ctx = make_context(slope_c);
      Knot k = make_knot(ctx.get(), slope_c.knot);
      char* out = nullptr;
      check(ctx.get(), riley_slope_of_point(ctx.get(), k.get(), t_text.c_str(), u_text.c_str(), &out));
      emit(slope_c, take(out));
    } else if (*certify) {
      Context ctx = make_context(cert_c);
      Knot k = make_knot(ctx.get(), cert_c.knot);
      char* out = nullptr;
      check(ctx.get(), riley_certify_slope(ctx.get(), k.get(), slope_text.c_str(), &out));
      emit(cert_c, take(out));
    } else if (*report) {
      Context ctx = make_context(report_c);
      Knot k = make_knot(ctx.get(), report_c.knot);
      std::vector<const char*> ptrs;
      for (const auto& s : samples) ptrs.push_back(s.c_str());
      char* out = nullptr;
      check(ctx.get(), riley_interval_report(ctx.get(), k.get(), ptrs.data(), ptrs.size(), &out));
      emit(report_c, take(out));
    } else if (*transfer) {
      Context ctx = make_context(transfer_c);
      char* out = nullptr;
      if (d_only) {
        check(ctx.get(), riley_transfer_d(ctx.get(), *d_only, source[0].c_str(),
                                          source[1].c_str(), &out));
      } else {
        check(ctx.get(), riley_transfer(ctx.get(), base.data(), base.size(), twists.data(),
                                        twists.size(), eps.data(), eps.size(),
                                        source[0].c_str(), source[1].c_str(), &out));
      }
      emit(transfer_c, take(out));
    } else if (*selftest) {
      Context ctx = make_context(self_c);
      char* out = nullptr;
      riley_status s = riley_selftest(ctx.get(), max_p, &out);
      if (s == RILEY_OK || s == RILEY_E_SELFTEST_FAILED) emit(self_c, take(out));
      if (s != RILEY_OK) throw Failure{s, s == RILEY_E_SELFTEST_FAILED ? "identity failures" : riley_last_error(ctx.get())};
    }
  } catch (const Failure& f) {
    nlohmann::json j = {{"error", {{"code", riley_status_name(f.status)}, {"message", f.message}}}};
    std::cout << j.dump(2) << '\n';
    return exit_code(f.status);
  }
  return 0;
}
