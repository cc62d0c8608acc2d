// SPDX-License-Identifier: Apache-2.0

#include "riley/riley_c.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <memory>
#include <new>
#include <string>
#include <vector>

#include <json.hpp>

#include "riley/certify.hpp"
#include "riley/error.hpp"

struct riley_context {
  unsigned digits = riley::kDefaultDigits;
  double tol = 1e-30;
  double recheck_tol = 1e-60;
  std::string cache_dir;
  std::string last_error;
};

struct riley_knot {
  riley::TwoBridgeKnot knot;
  std::shared_ptr<const riley::RileySystem> system;
  bool cache_hit = false;
};

namespace {

using namespace riley;

riley_status status_of(ErrorCode c) { return static_cast<riley_status>(static_cast<int>(c) + 1); }

template <class F>
riley_status guarded(riley_context* ctx, F&& f) {
  if (!ctx) return RILEY_E_INVALID_ARGUMENT;
  try {
    ctx->last_error.clear();
    return f();
  } catch (const Error& e) {
    ctx->last_error = e.what();
    return status_of(e.code());
  } catch (const std::bad_alloc&) {
    ctx->last_error = "out of memory";
    return RILEY_E_INTERNAL;
  } catch (const std::exception& e) {
    ctx->last_error = e.what();
    return RILEY_E_INTERNAL;
  }
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void require(bool ok, const char* what) {
  if (!ok) throw Error(ErrorCode::InvalidArgument, what);
}

std::shared_ptr<const RileySystem> system_of(riley_context* ctx, riley_knot* knot) {
  if (!knot->system) {
    if (ctx->cache_dir.empty()) {
      knot->system = riley_system(knot->knot);
    } else {
      bool hit = false;
      knot->system = load_or_build(knot->knot, ctx->cache_dir, &hit);
      knot->cache_hit = hit;
    }
  }
  return knot->system;
}

TraceConfig trace_config(const riley_context* ctx) {
  TraceConfig cfg = TraceConfig::for_digits(ctx->digits);
  cfg.tol_residual = ctx->tol;
  cfg.tol_newton = std::min(cfg.tol_newton, ctx->tol * 1e-10);
  return cfg;
}

CertifyConfig certify_config(const riley_context* ctx) {
  CertifyConfig cfg;
  cfg.tol = ctx->tol;
  cfg.recheck_tol = ctx->recheck_tol;
  cfg.recheck_digits = 2 * ctx->digits;
  return cfg;
}

riley_status make_knot(riley_knot** out, const TwoBridgeKnot& k) {
  *out = new riley_knot{k, nullptr, false};
  return RILEY_OK;
}

}  // namespace

extern "C" {

const char* riley_status_name(riley_status status) {
  switch (status) {
    case RILEY_OK: return "Ok";
    case RILEY_E_SELFTEST_FAILED: return "SelftestFailed";
    case RILEY_E_INTERNAL: return "Internal";
    default: break;
  }
  int idx = static_cast<int>(status) - 1;
  if (idx >= 0 && idx <= static_cast<int>(ErrorCode::EvenD))
    return error_code_name(static_cast<ErrorCode>(idx)).data();
  return "Unknown";
}

int riley_status_is_numerical(riley_status status) {
  switch (status) {
    case RILEY_OK: return 0;
    case RILEY_E_SELFTEST_FAILED:
    case RILEY_E_INTERNAL: return 1;
    default: break;
  }
  int idx = static_cast<int>(status) - 1;
  if (idx < 0 || idx > static_cast<int>(ErrorCode::EvenD)) return 0;
  return error_category(static_cast<ErrorCode>(idx)) == ErrorCategory::numerical ? 1 : 0;
}

riley_status riley_context_create(riley_context** out) {
  if (!out) return RILEY_E_INVALID_ARGUMENT;
  *out = new (std::nothrow) riley_context();
  return *out ? RILEY_OK : RILEY_E_INTERNAL;
}

void riley_context_destroy(riley_context* ctx) { delete ctx; }

riley_status riley_context_set_digits(riley_context* ctx, unsigned digits) {
  return guarded(ctx, [&] {
    require(digits >= 30, "precision must be at least 30 digits");
    require(digits <= 2000, "precision above 2000 digits is not supported");
    ctx->digits = digits;
    ctx->tol = std::pow(10.0, -0.6 * digits);
    ctx->recheck_tol = ctx->tol * ctx->tol;
    return RILEY_OK;
  });
}

riley_status riley_context_set_tolerance(riley_context* ctx, double tol) {
  return guarded(ctx, [&] {
    require(tol > 0 && tol < 1 && std::isfinite(tol), "tolerance must lie in (0, 1)");
    ctx->tol = tol;
    ctx->recheck_tol = tol * tol;
    return RILEY_OK;
  });
}

riley_status riley_context_set_cache_dir(riley_context* ctx, const char* dir) {
  return guarded(ctx, [&] {
    ctx->cache_dir = dir ? dir : "";
    return RILEY_OK;
  });
}

const char* riley_last_error(const riley_context* ctx) {
  return ctx ? ctx->last_error.c_str() : "";
}

riley_status riley_knot_from_pq(riley_context* ctx, long p, long q, riley_knot** out) {
  return guarded(ctx, [&] {
    require(out != nullptr, "null output handle");
    return make_knot(out, validate_knot(p, q));
  });
}

riley_status riley_knot_from_cf(riley_context* ctx, const long* entries, size_t n,
                                riley_knot** out) {
  return guarded(ctx, [&] {
    require(out != nullptr && (entries != nullptr || n == 0), "null argument");
    ContinuedFraction cf{std::vector<long>(entries, entries + n)};
    return make_knot(out, cf_to_pq(cf));
  });
}

riley_status riley_knot_from_double_twist(riley_context* ctx, long k, long m, riley_knot** out,
                                          int* ambiguous) {
  return guarded(ctx, [&] {
    require(out != nullptr, "null output handle");
    DoubleTwist dt = double_twist_to_pq(k, m);
    if (ambiguous) *ambiguous = dt.figure_eight_ambiguous ? 1 : 0;
    return make_knot(out, dt.knot);
  });
}

void riley_knot_pq(const riley_knot* knot, long* p, long* q) {
  if (!knot) return;
  if (p) *p = knot->knot.p();
  if (q) *q = knot->knot.q();
}

void riley_knot_destroy(riley_knot* knot) { delete knot; }

riley_status riley_poly_text(riley_context* ctx, riley_knot* knot, char** out, int* cache_hit) {
  return guarded(ctx, [&] {
    require(knot && out, "null argument");
    auto sys = system_of(ctx, knot);
    if (cache_hit) *cache_hit = knot->cache_hit ? 1 : 0;
    *out = dup(sys->P.to_string());
    return RILEY_OK;
  });
}

riley_status riley_slope_of_point(riley_context* ctx, riley_knot* knot, const char* t,
                                  const char* u, char** out) {
  return guarded(ctx, [&] {
    require(knot && t && u && out, "null argument");
    PrecisionScope scope(ctx->digits);
    NumericSystem ns(system_of(ctx, knot));
    Real tv = parse_real(t), uv = parse_real(u);
    *out = dup(format_real(slope_of_point(ns, tv, uv), ctx->digits));
    return RILEY_OK;
  });
}

riley_status riley_trace_csv(riley_context* ctx, riley_knot* knot, const char* branch,
                             char** out) {
  return guarded(ctx, [&] {
    require(knot && branch && out, "null argument");
    PrecisionScope scope(ctx->digits);
    NumericSystem ns(system_of(ctx, knot));
    TraceConfig cfg = trace_config(ctx);
    const std::string name(branch);
    Parameterization param;
    Direction dir;
    if (name == "psi" || name == "t+" || name == "t-") {
      param = Parameterization::by_t;
      dir = name == "t-" ? Direction::decreasing : Direction::increasing;
    } else if (name == "phi" || name == "u+" || name == "u-") {
      param = Parameterization::by_u;
      dir = name == "u-" ? Direction::decreasing : Direction::increasing;
    } else {
      throw Error(ErrorCode::InvalidArgument,
                  "unknown branch '" + name + "' (expected psi, phi, t+, t-, u+ or u-)");
    }
    if (name == "psi") cfg.band = Band::psi();
    if (name == "phi") cfg.band = Band::phi();
    Branch b = trace_branch(ns, seed_psi(ns), cfg, param, dir);
    *out = dup(branch_csv(b));
    return RILEY_OK;
  });
}

riley_status riley_certify_slope(riley_context* ctx, riley_knot* knot, const char* slope,
                                 char** out) {
  return guarded(ctx, [&] {
    require(knot && slope && out, "null argument");
    Rational r = parse_rational(slope);
    PrecisionScope scope(ctx->digits);
    NumericSystem ns(system_of(ctx, knot));
    if (ns.system().knot.is_torus())
      throw Error(ErrorCode::TorusKnot, "torus knots receive no left-orderability claims");
    auto branches = standard_branches(ns, trace_config(ctx));
    *out = dup(certificate_json(certify_slope(ns, branches, r, certify_config(ctx))));
    return RILEY_OK;
  });
}

riley_status riley_interval_report(riley_context* ctx, riley_knot* knot,
                                   const char* const* samples, size_t n, char** out) {
  return guarded(ctx, [&] {
    require(knot && out && (samples || n == 0), "null argument");
    std::vector<Rational> rs;
    for (size_t i = 0; i < n; ++i) {
      require(samples[i] != nullptr, "null sample");
      rs.push_back(parse_rational(samples[i]));
    }
    PrecisionScope scope(ctx->digits);
    NumericSystem ns(system_of(ctx, knot));
    *out = dup(report_json(standard_report(ns, rs, trace_config(ctx), certify_config(ctx))));
    return RILEY_OK;
  });
}

riley_status riley_transfer(riley_context* ctx, const long* base, size_t n_base, const long* c,
                            size_t n_c, const int* eps, size_t n_eps, const char* lo,
                            const char* hi, char** out) {
  return guarded(ctx, [&] {
    require(out && lo && hi, "null argument");
    require((base || n_base == 0) && (c || n_c == 0) && (eps || n_eps == 0), "null array");
    WangFamilySpec spec{ContinuedFraction{std::vector<long>(base, base + n_base)},
                        std::vector<long>(c, c + n_c), std::vector<int>(eps, eps + n_eps)};
    *out = dup(transfer_json(transfer_interval(spec, parse_rational(lo), parse_rational(hi))));
    return RILEY_OK;
  });
}

riley_status riley_transfer_d(riley_context* ctx, int d, const char* lo, const char* hi,
                              char** out) {
  return guarded(ctx, [&] {
    require(out && lo && hi, "null argument");
    *out = dup(transfer_json(transfer_interval(d, parse_rational(lo), parse_rational(hi))));
    return RILEY_OK;
  });
}

riley_status riley_selftest(riley_context* ctx, long max_p, char** out) {
  return guarded(ctx, [&] {
    require(out != nullptr, "null argument");
    require(max_p >= 3, "max_p must be at least 3");
    nlohmann::json failures = nlohmann::json::array();
    std::size_t count = 0;
    for (const TwoBridgeKnot& k : all_knots_up_to(max_p)) {
      IdentityReport r = check_identities(k);
      ++count;
      if (!r.all())
        failures.push_back({{"p", k.p()},
                            {"q", k.q()},
                            {"palindrome", r.palindrome},
                            {"c_equals_minus_ub", r.c_equals_minus_ub},
                            {"det_one", r.det_one},
                            {"boundary_value_one", r.boundary_value_one},
                            {"t_symmetric", r.t_symmetric}});
    }
    nlohmann::json j = {{"max_p", max_p},
                        {"knots", count},
                        {"failures", failures},
                        {"passed", failures.empty()}};
    *out = dup(j.dump(2) + "\n");
    return failures.empty() ? RILEY_OK : RILEY_E_SELFTEST_FAILED;
  });
}

riley_status riley_verify_certificate(riley_context* ctx, const char* json, char** out) {
  return guarded(ctx, [&] {
    require(json && out, "null argument");
    Revalidation rv = verify_certificate_json(json);
    nlohmann::json j = {{"valid", rv.ok},
                        {"residual_P", format_real(rv.residual_P, 6)},
                        {"residual_slope", format_real(rv.residual_slope, 6)}};
    *out = dup(j.dump(2) + "\n");
    return RILEY_OK;
  });
}

void riley_string_free(char* s) { std::free(s); }

}  // extern "C"
