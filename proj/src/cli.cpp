#include "subseries/cli.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "subseries/criteria.hpp"
#include "subseries/errors.hpp"
#include "subseries/format.hpp"
#include "subseries/report.hpp"
#include "subseries/spec_parser.hpp"
#include "subseries/thinning.hpp"
#include "subseries/transforms.hpp"

namespace subseries::cli {

namespace {

using Row = std::vector<std::string>;

struct Context {
  const RunConfig& rc;
  std::ostream& out;
  std::ostream& err;
};

std::string num(double x) { return sig15(x); }
std::string num(Index x) { return std::to_string(x); }

void print_table(std::ostream& out, const Row& header, const std::vector<Row>& rows) {
  std::vector<std::size_t> width(header.size());
  for (std::size_t i = 0; i < header.size(); ++i) width[i] = header[i].size();
  for (const auto& r : rows)
    for (std::size_t i = 0; i < r.size(); ++i) width[i] = std::max(width[i], r[i].size());
  auto line = [&](const Row& r) {
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (i) out << "  ";
      out << std::string(width[i] - r[i].size(), ' ') << r[i];
    }
    out << '\n';
  };
  line(header);
  for (const auto& r : rows) line(r);
}

void print_csv(std::ostream& out, const Row& header, const std::vector<Row>& rows) {
  auto line = [&](const Row& r) {
    for (std::size_t i = 0; i < r.size(); ++i) out << (i ? "," : "") << r[i];
    out << '\n';
  };
  line(header);
  for (const auto& r : rows) line(r);
}

Json document(const Context& ctx) {
  Json doc{{"schema", kJsonSchema}, {"command", command_name(ctx.rc.command)}};
  if (!ctx.rc.series.empty()) doc["series"] = ctx.rc.series;
  if (!ctx.rc.seq.empty()) doc["seq"] = ctx.rc.seq;
  return doc;
}

// Flattens scalar members of a JSON object as "key value" lines (table) or
// "key,value" lines (csv).
void print_record(std::ostream& out, Format format, const Json& record, const std::string& prefix = "") {
  for (const auto& [key, value] : record.items()) {
    const std::string name = prefix.empty() ? key : prefix + "." + key;
    if (value.is_object()) {
      print_record(out, format, value, name);
      continue;
    }
    std::string text;
    if (value.is_number_float()) text = num(value.get<double>());
    else if (value.is_string()) text = value.get<std::string>();
    else text = value.dump();
    if (format == Format::csv) out << name << ',' << text << '\n';
    else out << name << ": " << text << '\n';
  }
}

void emit_record(const Context& ctx, Json payload) {
  if (ctx.rc.format == Format::json) {
    Json doc = document(ctx);
    for (auto& [k, v] : payload.items()) doc[k] = v;
    ctx.out << doc.dump(2) << '\n';
    return;
  }
  if (ctx.rc.format == Format::csv) ctx.out << "key,value\n";
  print_record(ctx.out, ctx.rc.format, payload);
}

void emit_rows(const Context& ctx, const Row& header, const std::vector<Row>& rows, Json extra) {
  switch (ctx.rc.format) {
    case Format::csv:
      print_csv(ctx.out, header, rows);
      return;
    case Format::table:
      print_table(ctx.out, header, rows);
      print_record(ctx.out, Format::table, extra);
      return;
    case Format::json: {
      Json doc = document(ctx);
      for (auto& [k, v] : extra.items()) doc[k] = v;
      Json arr = Json::array();
      for (const auto& r : rows) {
        Json obj = Json::object();
        for (std::size_t i = 0; i < header.size(); ++i) obj[header[i]] = r[i];
        arr.push_back(obj);
      }
      doc["rows"] = arr;
      ctx.out << doc.dump(2) << '\n';
      return;
    }
  }
}

void print_certificate(std::ostream& out, const Certificate& cert, double tol, int depth) {
  const std::string pad(static_cast<std::size_t>(depth) * 2, ' ');
  out << pad << "certificate: " << cert.kind << '\n';
  out << pad << "  " << cert.statement << '\n';
  for (const auto& [k, v] : cert.params) out << pad << "  " << k << " = " << num(v) << '\n';
  for (const auto& l : cert.chain)
    out << pad << "  [" << (l.holds(tol) ? "ok" : "FAIL") << "] " << l.lhs << " = " << num(l.lhs_value)
        << "  <=  " << l.rhs << " = " << num(l.rhs_value) << '\n';
  for (const auto& p : cert.premises) print_certificate(out, p, tol, depth + 1);
}

void emit_verdict(const Context& ctx, const Verdict& v, Json extra = Json::object()) {
  const double tol = ctx.rc.config.rel_tol;
  if (ctx.rc.format != Format::table) {
    Json payload = extra;
    const Json verdict = to_json(v, tol);
    for (const auto& [k, val] : verdict.items()) payload[k] = val;
    if (ctx.rc.format == Format::json) {
      emit_record(ctx, payload);
    } else {
      ctx.out << "key,value\n";
      print_record(ctx.out, Format::csv, payload);
    }
    return;
  }
  print_record(ctx.out, Format::table, extra);
  ctx.out << "outcome: " << to_string(v.outcome) << '\n';
  if (v.certificate) print_certificate(ctx.out, *v.certificate, tol, 0);
  if (v.sandwich) {
    ctx.out << "sandwich (K=" << v.sandwich->K << "): " << num(v.sandwich->lower) << " <= " << num(v.sandwich->middle)
            << " <= " << num(v.sandwich->upper) << "  width " << num(v.sandwich->width()) << '\n';
  }
  for (const auto& [name, value] : v.evidence) ctx.out << name << ": " << num(value) << '\n';
  for (const auto& n : v.notes) ctx.out << "note: " << n << '\n';
}

MonotoneSeries need_series(const RunConfig& rc) {
  if (rc.series.empty()) throw SpecError(0, "--series is required for " + command_name(rc.command));
  return parse_series(rc.series);
}

Subsequence need_seq(const RunConfig& rc) {
  if (rc.seq.empty()) throw SpecError(0, "--seq is required for " + command_name(rc.command));
  auto seq = parse_subsequence(rc.seq);
  if (auto len = seq.length()) {
    const auto report = validate(seq, *len, 1);
    if (!report.passed)
      throw PreconditionError("subsequence '" + rc.seq + "' is invalid: " + report.reason, report.failed_k);
  }
  return seq;
}

// Block count for commands that take --K or --horizon-n. A horizon is rounded
// down to the last complete block and the adjustment reported.
Index resolve_blocks(const Context& ctx, const Subsequence& seq, Json& extra, Index minimum) {
  Index K = ctx.rc.K.value_or(ctx.rc.config.default_K);
  if (!ctx.rc.K && ctx.rc.horizon_n) {
    const Index n = *ctx.rc.horizon_n;
    K = seq.counting(n + 1) - 1;
    if (K < minimum)
      throw PreconditionError("horizon_n=" + std::to_string(n) + " does not cover " + std::to_string(minimum) +
                              " complete block(s)");
    const Index end = seq.value(K + 1) - 1;
    Json adj{{"requested_horizon_n", n}, {"block_aligned_end", end}, {"K", K}};
    extra["horizon_adjustment"] = adj;
    if (end != n && ctx.rc.format == Format::csv)
      ctx.err << "horizon_n " << n << " rounded down to block boundary " << end << " (K=" << K << ")\n";
  }
  if (K < minimum) throw std::domain_error("K must be >= " + std::to_string(minimum));
  return K;
}

void flag_non_monotone(const Context& ctx, const MonotoneSeries& src, Index upto) {
  upto = std::clamp<Index>(upto, 2, ctx.rc.config.monotone_horizon);
  const auto check = check_monotone(src, upto);
  if (!check.monotone)
    ctx.err << "warning: series '" << src.name() << "' is not monotone (first violation at n="
            << *check.first_violation << "); transform values carry no certified meaning\n";
}

// ---------------------------------------------------------------------------
// commands

int cmd_condense(const Context& ctx) {
  const auto src = need_series(ctx.rc);
  const auto seq = need_seq(ctx.rc);
  Json extra = Json::object();
  const Index K = resolve_blocks(ctx, seq, extra, 1);
  require_budget(seq, K, ctx.rc.config.max_terms);
  flag_non_monotone(ctx, src, seq.value(K + 1));
  std::vector<Row> rows;
  Compensated total;
  for (Index k = 1; k <= K; ++k) {
    const Index s = seq.value(k);
    const double t = condensed_term(src, seq, k);
    total.add(t);
    rows.push_back({num(k), num(s), num(seq.forward_diff(k)), num(src.term(s)), num(t)});
  }
  extra["K"] = K;
  extra["condensed_partial_sum"] = total.value();
  emit_rows(ctx, {"k", "s_k", "delta", "a_s_k", "term"}, rows, extra);
  return kOk;
}

int cmd_dilute(const Context& ctx) {
  const auto src = need_series(ctx.rc);
  const auto seq = need_seq(ctx.rc);
  Json extra = Json::object();
  const Index K = resolve_blocks(ctx, seq, extra, 1);
  require_budget(seq, K, ctx.rc.config.max_terms);
  const Index last = seq.value(K + 1) - 1;
  flag_non_monotone(ctx, src, last + 1);
  std::vector<Row> rows;
  Compensated total;
  for (const auto& block : block_partition(seq, K)) {
    const Index S = seq.counting(block.first);
    const double inv = 1.0 / static_cast<double>(block.width());
    for (Index n = block.first; n <= block.last; ++n) {
      const double a = src.term(n);
      const double t = a * inv;
      total.add(t);
      rows.push_back({num(n), num(a), num(S), num(block.width()), num(t)});
    }
  }
  extra["K"] = K;
  extra["diluted_partial_sum"] = total.value();
  emit_rows(ctx, {"n", "a_n", "S_n", "weight", "term"}, rows, extra);
  return kOk;
}

int cmd_sandwich(const Context& ctx) {
  const auto src = need_series(ctx.rc);
  const auto seq = need_seq(ctx.rc);
  Json extra = Json::object();
  const Index K = resolve_blocks(ctx, seq, extra, 2);
  const auto& cfg = ctx.rc.config;
  const auto dil = dilution_sandwich(src, seq, K, cfg);
  const auto ratio = ratio_bound(seq, K - 1);
  const double c = ctx.rc.c.value_or(
      std::nextafter(ratio.max_ratio.to_double(), std::numeric_limits<double>::infinity()));
  const auto cond = schlomilch_sandwich(src, seq, K, c, cfg);
  Json payload = extra;
  payload["dilution"] = to_json(dil);
  payload["ratio_bound"] = Json{{"horizon_k", ratio.horizon_k},
                                {"max_ratio", ratio.max_ratio.str()},
                                {"attained_at", ratio.attained_at}};
  payload["condensation"] = to_json(cond);
  emit_record(ctx, payload);
  return kOk;
}

int cmd_classify(const Context& ctx) {
  const auto src = need_series(ctx.rc);
  const auto seq = need_seq(ctx.rc);
  Config cfg = ctx.rc.config;
  if (ctx.rc.K) cfg.default_K = *ctx.rc.K;
  emit_verdict(ctx, classify(src, seq, cfg));
  return kOk;
}

int cmd_sparsity(const Context& ctx) {
  const auto src = need_series(ctx.rc);
  const auto seq = need_seq(ctx.rc);
  const double p = ctx.rc.p ? *ctx.rc.p : src.power_sum() ? src.power_sum()->p : 2.0;
  if (!(p > 1.0)) throw std::domain_error("--p must exceed 1");
  const auto params = SparsityParams::from_series(src, p);
  const Index K = ctx.rc.K.value_or(ctx.rc.config.default_K);
  emit_verdict(ctx, sparsity_test(src, seq, params, K, ctx.rc.config), Json{{"p", p}, {"K", K}});
  return kOk;
}

PolySparsity resolve_envelope(const Context& ctx, const Subsequence& seq, bool required) {
  if (ctx.rc.c && ctx.rc.alpha) return PolySparsity::make(*ctx.rc.c, *ctx.rc.alpha);
  if (ctx.rc.c || ctx.rc.alpha) throw std::domain_error("--c and --alpha must be given together");
  if (auto env = seq.sparsity_envelope()) return *env;
  if (required) throw PreconditionError("sequence '" + seq.spec() + "' has no registered envelope; pass --c and --alpha");
  return {};
}

int cmd_polysparse(const Context& ctx) {
  const auto seq = need_seq(ctx.rc);
  const auto ps = resolve_envelope(ctx, seq, true);
  Config cfg = ctx.rc.config;
  if (ctx.rc.horizon_n) cfg.poly_horizon = *ctx.rc.horizon_n;
  const auto report = poly_sparsity_check(seq, ps, cfg.poly_horizon, cfg.rel_tol);
  Json check{{"c", ps.c},
             {"alpha", ps.alpha},
             {"beta", ps.beta()},
             {"horizon_n", report.horizon_n},
             {"checked_k", report.checked_k},
             {"passed", report.passed}};
  if (report.density_failure_n) check["density_failure_n"] = *report.density_failure_n;
  if (report.lower_bound_failure_k) check["lower_bound_failure_k"] = *report.lower_bound_failure_k;
  if (!report.passed) {
    emit_record(ctx, Json{{"check", check}});
    ctx.err << "refused: polynomial sparsity envelope fails; no verdict\n";
    return kRefused;
  }
  const Index K = ctx.rc.K.value_or(cfg.default_K);
  emit_verdict(ctx, harmonic_poly_sparse_verdict(seq, ps, K, cfg), Json{{"check", check}});
  return kOk;
}

int cmd_powellsalat(const Context& ctx) {
  const auto seq = need_seq(ctx.rc);
  const Index N = ctx.rc.horizon_n.value_or(ctx.rc.config.poly_horizon);
  std::optional<PolySparsity> env;
  if (ctx.rc.c || ctx.rc.alpha) env = resolve_envelope(ctx, seq, true);
  const auto r = powell_salat_partial(seq, N, env);
  Json payload{{"N", r.N}, {"partial", r.partial}, {"envelope_verified", r.envelope_verified}};
  payload["tail_bound"] = r.tail_bound ? Json(*r.tail_bound) : Json(nullptr);
  emit_record(ctx, payload);
  return kOk;
}

int cmd_thin(const Context& ctx) {
  const auto src = need_series(ctx.rc);
  if (!ctx.rc.target) throw SpecError(0, "--target is required for thin");
  Index max_scan = 0;
  if (ctx.rc.max_scan) {
    max_scan = *ctx.rc.max_scan;
  } else {
    max_scan = 10;
    while (!(src.term(max_scan) < ctx.rc.epsilon) && max_scan <= std::numeric_limits<Index>::max() / 10)
      max_scan *= 10;
  }
  require_monotone(src, std::min(ctx.rc.config.monotone_horizon, max_scan));
  const auto r = greedy_thin(src, *ctx.rc.target, ctx.rc.epsilon, max_scan);
  const double p = ctx.rc.p.value_or(2.0);
  Compensated root_sum;
  for (Index i : r.chosen_indices) root_sum.add(std::pow(static_cast<double>(i), -1.0 / p));
  Json payload = to_json(r);
  payload["max_scan"] = max_scan;
  payload["root_sum_p"] = p;
  payload["root_sum_partial"] = root_sum.value();
  emit_record(ctx, payload);
  return kOk;
}

int cmd_validate(const Context& ctx) {
  if (ctx.rc.seq.empty()) throw SpecError(0, "--seq is required for validate");
  const auto seq = parse_subsequence(ctx.rc.seq);
  const Index hk = ctx.rc.K.value_or(100);
  const Index hn = ctx.rc.horizon_n.value_or(10'000);
  const auto r = validate(seq, hk, hn);
  Json payload{{"horizon_k", hk}, {"checked_k", r.checked_k}, {"horizon_n", hn}, {"passed", r.passed}};
  if (r.failed_k) payload["failed_k"] = *r.failed_k;
  if (r.failed_n) payload["failed_n"] = *r.failed_n;
  if (!r.passed) payload["reason"] = r.reason;
  emit_record(ctx, payload);
  return kOk;
}

}  // namespace

Command parse_command(const std::string& name) {
  static const std::pair<const char*, Command> table[] = {
      {"condense", Command::condense},     {"dilute", Command::dilute},   {"sandwich", Command::sandwich},
      {"classify", Command::classify},     {"sparsity", Command::sparsity}, {"polysparse", Command::polysparse},
      {"powellsalat", Command::powellsalat}, {"thin", Command::thin},     {"validate", Command::validate}};
  for (const auto& [n, c] : table)
    if (name == n) return c;
  throw SpecError(0, "unknown command '" + name + "'");
}

std::string command_name(Command c) {
  switch (c) {
    case Command::condense: return "condense";
    case Command::dilute: return "dilute";
    case Command::sandwich: return "sandwich";
    case Command::classify: return "classify";
    case Command::sparsity: return "sparsity";
    case Command::polysparse: return "polysparse";
    case Command::powellsalat: return "powellsalat";
    case Command::thin: return "thin";
    case Command::validate: return "validate";
  }
  return "classify";
}

Format parse_format(const std::string& name) {
  if (name == "table") return Format::table;
  if (name == "csv") return Format::csv;
  if (name == "json") return Format::json;
  throw SpecError(0, "unknown format '" + name + "'");
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const Context ctx{config, out, err};
  try {
    switch (config.command) {
      case Command::condense: return cmd_condense(ctx);
      case Command::dilute: return cmd_dilute(ctx);
      case Command::sandwich: return cmd_sandwich(ctx);
      case Command::classify: return cmd_classify(ctx);
      case Command::sparsity: return cmd_sparsity(ctx);
      case Command::polysparse: return cmd_polysparse(ctx);
      case Command::powellsalat: return cmd_powellsalat(ctx);
      case Command::thin: return cmd_thin(ctx);
      case Command::validate: return cmd_validate(ctx);
    }
  } catch (const SpecError& e) {
    err << "spec error " << e.what() << '\n';
    return kSpecError;
  } catch (const PreconditionError& e) {
    err << "refused: " << e.what();
    if (e.witness()) err << " (witness " << *e.witness() << ")";
    err << '\n';
    return kRefused;
  } catch (const std::exception& e) {
    err << "refused: " << e.what() << '\n';
    return kRefused;
  }
  return kOk;
}

}  // namespace subseries::cli
