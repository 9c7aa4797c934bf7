#pragma once

// Command-line front end. Every result is one JSON object per line on `out`;
// diagnostics go to `err`. Exit status: 0 success, 1 domain error, 2 usage error.

#include <cerrno>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <optional>
#include <stdexcept>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "annulus/annular.hpp"
#include "annulus/disc.hpp"
#include "annulus/matrixsim.hpp"
#include "annulus/moments.hpp"
#include "annulus/report.hpp"
#include "annulus/verify.hpp"

namespace annulus::cli {

inline constexpr std::uint64_t kDefaultSeed = 20240601;
inline constexpr const char* kSeedVariable = "ANNULUS_SEED";
inline constexpr std::size_t kDefaultMaxN = 9;

// Thrown for bad flag combinations that CLI11 cannot express.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

struct Args {
  std::string shape, perm, partition, words, v, w, ensemble = "wishart", method, c, c_prime;
  long long M = 0, N = 0;
  std::size_t max_n = kDefaultMaxN, trials = 10000, alphabet = 0;
  std::uint64_t seed = kDefaultSeed;
  bool connected = false, disconnected = false, limit = false, mobius = false, connected_sum = false;
  int criterion = 0;
};

inline void emit(std::ostream& out, const Json& j) { out << j.dump() << '\n'; }

inline Ensemble ensemble_of(const Args& a) { return a.ensemble == "gue" ? Ensemble::Gue : Ensemble::Wishart; }

inline Permutation perm_on(const Args& a, const AnnulusShape& s) { return parse_cycles(a.perm, s.ground()); }

inline std::vector<Word> words_of(const Args& a) { return parse_words(a.words, a.alphabet); }

inline std::pair<Word, Word> pair_of(const Args& a) {
  auto ws = parse_words(a.v + ";" + a.w, a.alphabet);
  return {ws[0], ws[1]};
}

inline void require_dims(const Args& a, bool need_m) {
  if (a.N < 1) throw UsageError("--N is required and must be positive");
  if (need_m && a.M < 1) throw UsageError("--M is required and must be positive");
}

// For gue M defaults to N and must equal it.
inline long long gue_n(const Args& a) {
  require_dims(a, false);
  if (a.M != 0 && a.M != a.N) throw DomainError("gue requires M = N");
  return a.N;
}

inline Connectivity connectivity_of(const Args& a) {
  if (a.connected) return Connectivity::Connected;
  if (a.disconnected) return Connectivity::Disconnected;
  return Connectivity::Any;
}

inline void add_limit_values(Json& j, const CPoly& p, const Args& a, const char* key = "value") {
  if (!a.c.empty()) j[key] = to_json(p.evaluate(parse_rational(a.c)));
}

// ---------------------------------------------------------------------------

inline int cmd_check(const Args& a, std::ostream& out) {
  const auto s = parse_shape(a.shape);
  const auto t = perm_on(a, s);
  const auto method = a.method == "patterns" ? MembershipMethod::Patterns : MembershipMethod::Geodesic;
  Json j;
  if (s.circles() == 1) {
    j["member"] = method == MembershipMethod::Patterns ? is_disc_nc(t) : is_disc_nc_geodesic(t);
    j["connected"] = true;
    if (auto d = find_dns(t))
      j["witness"] = Json{{"kind", "DNS"}, {"elements", *d}};
    else if (auto c = find_dc(t))
      j["witness"] = Json{{"kind", "DC"}, {"elements", *c}};
    else
      j["witness"] = nullptr;
  } else if (s.is_two_circle()) {
    j["member"] = is_ann_nc(t, s, method);
    j["connected"] = has_connecting_orbit(t, s);
    j["witness"] = to_json(find_ann_witness(t, s));
  } else {
    throw DomainError("no membership test exists for three or more circles; use `defect`");
  }
  emit(out, j);
  return 0;
}

inline int cmd_enumerate(const Args& a, std::ostream& out) {
  const auto s = parse_shape(a.shape);
  std::vector<Permutation> perms;
  if (s.circles() == 1) {
    if (a.connected || a.disconnected) throw UsageError("--connected/--disconnected need a two-circle shape");
    perms = enumerate_disc_nc(s.total(), a.max_n);
  } else {
    perms = enumerate_ann_nc(s, connectivity_of(a), a.max_n);
  }
  for (const auto& t : perms) emit(out, Json{{"perm", format_cycles(t)}, {"orbits", orbit_count(t)}});
  return 0;
}

inline int cmd_count(const Args& a, std::ostream& out) {
  const auto s = parse_shape(a.shape);
  const bool enumerate = a.method == "enumerate";
  BigInt count;
  if (s.circles() == 1) {
    if (a.connected || a.disconnected) throw UsageError("--connected/--disconnected need a two-circle shape");
    count = enumerate ? BigInt(enumerate_disc_nc(s.total(), a.max_n).size()) : catalan(static_cast<unsigned>(s.total()));
  } else if (enumerate) {
    count = enumerate_ann_nc(s, connectivity_of(a), a.max_n).size();
  } else {
    const auto p = static_cast<unsigned>(s.p()), q = static_cast<unsigned>(s.q());
    if (a.connected)
      count = count_connected_closed_form(p, q);
    else if (a.disconnected)
      count = count_disconnected_closed_form(p, q);
    else
      count = count_connected_closed_form(p, q) + count_disconnected_closed_form(p, q);
  }
  emit(out, Json{{"count", count.str()}, {"method", enumerate ? "enumerate" : "closed_form"}});
  return 0;
}

inline int cmd_complement(const Args& a, std::ostream& out) {
  const auto s = parse_shape(a.shape);
  const auto t = perm_on(a, s);
  Permutation k = t;
  if (s.circles() == 1) {
    if (!is_disc_nc(t)) throw DomainError("permutation is not disc non-crossing");
    k = compose(inverse(t), gamma_disc(s.total()));
  } else {
    k = kreweras_annular(t, s);
  }
  emit(out, Json{{"kreweras", format_cycles(k)}});
  return 0;
}

inline int cmd_fiber(const Args& a, std::ostream& out) {
  const auto s = parse_shape(a.shape);
  const auto pi = parse_partition(a.partition, s.ground());
  Json perms = Json::array();
  for (const auto& t : nc_ann_fiber(pi, s)) perms.push_back(format_cycles(t));
  emit(out, Json{{"partition", format_partition(pi)},
                 {"connecting_blocks", connecting_blocks(pi, s).size()},
                 {"size", perms.size()},
                 {"perms", perms}});
  return 0;
}

inline int cmd_parity(const Args& a, std::ostream& out) {
  const auto s = parse_shape(a.shape);
  const auto t = perm_on(a, s);
  const auto image = parity_bijection(t, s);
  emit(out, Json{{"image", format_cycles(image)}, {"shape", format_shape(AnnulusShape::two(2 * s.p(), 2 * s.q()))}});
  return 0;
}

inline int cmd_moment(const Args& a, std::ostream& out) {
  const auto words = words_of(a);
  const auto e = ensemble_of(a);
  if (a.limit) {
    if (words.size() != 1) throw UsageError("--limit takes a single word");
    const auto& w = words[0];
    if (e == Ensemble::Gue) {
      emit(out, Json{{"count", std::to_string(gue_limit_moment(w, a.max_n))}});
      return 0;
    }
    const auto f = fluctuation_limits(w, a.max_n);
    Json j{{"poly_c", to_json(f.e_w)}, {"prime_coeff_c", to_json(f.e_w_prime_coeff)}};
    add_limit_values(j, f.e_w, a);
    if (!a.c.empty() && !a.c_prime.empty())
      j["prime_value"] = to_json(f.e_w_prime_coeff.evaluate(parse_rational(a.c)) * parse_rational(a.c_prime));
    emit(out, j);
    return 0;
  }
  Rational v;
  if (e == Ensemble::Gue) {
    v = gue_trace_product_exact(words, gue_n(a), a.max_n);
  } else {
    require_dims(a, true);
    v = wishart_trace_product_exact(words, a.M, a.N, a.max_n);
  }
  emit(out, Json{{"value", to_json(v)}, {"approx", to_double(v)}});
  return 0;
}

inline int cmd_covariance(const Args& a, std::ostream& out) {
  const auto [v, w] = pair_of(a);
  const auto e = ensemble_of(a);
  if (a.limit) {
    if (e == Ensemble::Gue) {
      emit(out, Json{{"count", std::to_string(gue_limit_covariance(v, w, a.max_n))}});
    } else {
      const auto p = wishart_limit_covariance(v, w, a.max_n);
      Json j{{"poly_c", to_json(p)}};
      add_limit_values(j, p, a);
      emit(out, j);
    }
    return 0;
  }
  if (e == Ensemble::Gue) {
    const auto n = gue_n(a);
    const auto value = gue_covariance_exact(v, w, n, a.max_n);
    emit(out, Json{{"value", to_json(value)}, {"approx", to_double(value)}});
    return 0;
  }
  require_dims(a, true);
  const auto id = finite_N_covariance_identity(v, w, a.M, a.N, a.max_n);
  emit(out, Json{{"lhs", to_json(id.lhs)}, {"rhs", to_json(id.rhs)}, {"equal", id.lhs == id.rhs}, {"approx", to_double(id.lhs)}});
  return 0;
}

inline int cmd_cumulant(const Args& a, std::ostream& out) {
  if (a.ensemble != "wishart") throw UsageError("cumulants are available for the wishart ensemble only");
  require_dims(a, true);
  const auto words = words_of(a);
  const bool connected = a.connected_sum;
  const auto v = connected ? connected_cumulant_exact(words, a.M, a.N, a.max_n)
                           : classical_cumulant_exact(words, a.M, a.N, a.max_n);
  emit(out, Json{{"value", to_json(v)}, {"approx", to_double(v)}, {"method", connected ? "connected" : "mobius"}});
  return 0;
}

inline int cmd_simulate(const Args& a, std::ostream& out) {
  const auto words = words_of(a);
  const auto e = ensemble_of(a);
  const long long M = e == Ensemble::Gue ? gue_n(a) : (require_dims(a, true), a.M);
  const auto est = estimate_trace_product(words, e, static_cast<std::size_t>(M), static_cast<std::size_t>(a.N),
                                          a.trials, a.seed);
  Json j = to_json(est);
  std::size_t total = 0;
  for (const auto& w : words) total += w.size();
  if (total <= a.max_n) {
    const auto exact = e == Ensemble::Gue ? gue_trace_product_exact(words, a.N, a.max_n)
                                          : wishart_trace_product_exact(words, a.M, a.N, a.max_n);
    j["exact"] = to_json(exact);
    j["z_score"] = est.std_error > 0 ? Json(est.z_score(to_double(exact))) : Json(nullptr);
  }
  emit(out, j);
  return 0;
}

inline int cmd_defect(const Args& a, std::ostream& out) {
  const auto s = parse_shape(a.shape);
  const auto t = perm_on(a, s);
  const auto gamma = gamma_of(s);
  const auto joint = joint_orbit_count(t, gamma);
  emit(out, Json{{"defect", genus_defect(t, s)},
                 {"orbits", orbit_count(t)},
                 {"complement_orbits", orbit_count(compose(inverse(t), gamma))},
                 {"joint_orbits", joint},
                 {"bound", s.total() - s.circles() + 2 * joint},
                 {"circle_partition", format_partition(circle_partition(t, s))}});
  return 0;
}

inline int cmd_verify(const Args& a, std::ostream& out) {
  verify::Options opt;
  opt.seed = a.seed;
  opt.mc_trials = a.trials;
  bool all = true, found = false;
  for (const auto& c : verify::criteria()) {
    if (a.criterion != 0 && c.id != a.criterion) continue;
    found = true;
    const auto r = verify::run(c, opt);
    all = all && r.passed;
    emit(out, Json{{"criterion", r.id},
                   {"name", r.name},
                   {"passed", r.passed},
                   {"seconds", r.seconds},
                   {"detail", r.detail}});
    out.flush();
  }
  if (!found) throw UsageError("no criterion " + std::to_string(a.criterion));
  return all ? 0 : 1;
}

inline std::uint64_t seed_from_env() {
  const char* s = std::getenv(kSeedVariable);
  if (!s || !*s) return kDefaultSeed;
  char* end = nullptr;
  errno = 0;
  const auto v = std::strtoull(s, &end, 10);
  if (errno || *end != '\0' || *s == '-') throw UsageError(std::string(kSeedVariable) + " is not a non-negative integer");
  return v;
}

}  // namespace detail

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  using detail::Args;
  Args a;
  CLI::App app{"Annular non-crossing permutations and Wishart/GUE trace moments", "annulus"};
  app.require_subcommand(1);

  std::vector<std::pair<CLI::App*, std::function<int(const Args&, std::ostream&)>>> commands;
  auto sub = [&](const char* name, const char* help, auto handler) {
    auto* s = app.add_subcommand(name, help);
    commands.emplace_back(s, handler);
    return s;
  };
  auto shape_opt = [&](CLI::App* s) { s->add_option("--shape", a.shape, "circle sizes, e.g. 5,3")->required(); };
  auto perm_opt = [&](CLI::App* s) { s->add_option("--perm", a.perm, "cycle notation, e.g. (1,8)(3,4,7)")->required(); };
  auto max_n_opt = [&](CLI::App* s) {
    s->add_option("--max-n", a.max_n, "size limit for enumeration and exact sums")
        ->check(CLI::Range(std::size_t{1}, kDefaultEnumerationLimit));
  };
  auto ensemble_opt = [&](CLI::App* s) {
    s->add_option("--ensemble", a.ensemble, "wishart or gue")->check(CLI::IsMember({"wishart", "gue"}));
  };
  auto dims_opt = [&](CLI::App* s) {
    s->add_option("--M", a.M, "rows of each Gaussian factor")->check(CLI::PositiveNumber);
    s->add_option("--N", a.N, "matrix size")->check(CLI::PositiveNumber);
  };
  auto connectivity_opts = [&](CLI::App* s) {
    auto* c = s->add_flag("--connected", a.connected, "connected permutations only");
    auto* d = s->add_flag("--disconnected", a.disconnected, "disconnected permutations only");
    c->excludes(d);
  };
  auto words_opt = [&](CLI::App* s) {
    s->add_option("--words", a.words, "words separated by ';', letters by ',', e.g. 1,2;2")->required();
    s->add_option("--alphabet", a.alphabet, "alphabet size (default: largest letter)");
  };
  auto* check = sub("check", "membership test with crossing witness", detail::cmd_check);
  shape_opt(check);
  perm_opt(check);
  check->add_option("--method", a.method, "geodesic or patterns")->check(CLI::IsMember({"geodesic", "patterns"}));

  auto* enumerate = sub("enumerate", "list non-crossing permutations of a shape", detail::cmd_enumerate);
  shape_opt(enumerate);
  connectivity_opts(enumerate);
  max_n_opt(enumerate);

  auto* count = sub("count", "count non-crossing permutations of a shape", detail::cmd_count);
  shape_opt(count);
  connectivity_opts(count);
  max_n_opt(count);
  count->add_option("--method", a.method, "closed_form or enumerate")->check(CLI::IsMember({"closed_form", "enumerate"}));

  auto* complement = sub("complement", "Kreweras complement tau^-1 gamma", detail::cmd_complement);
  shape_opt(complement);
  perm_opt(complement);

  auto* fiber = sub("fiber", "non-crossing permutations with given orbits", detail::cmd_fiber);
  shape_opt(fiber);
  fiber->add_option("--partition", a.partition, "blocks, e.g. {1,4}{2,3}")->required();

  auto* parity = sub("parity-bijection", "map a connected member of (p,q) to a pair permutation of (2p,2q)",
                     detail::cmd_parity);
  shape_opt(parity);
  perm_opt(parity);

  auto* moment = sub("moment", "exact trace moment or its large-N limit", detail::cmd_moment);
  ensemble_opt(moment);
  words_opt(moment);
  dims_opt(moment);
  max_n_opt(moment);
  moment->add_flag("--limit", a.limit, "limit polynomial in c (wishart) or limit count (gue)");
  moment->add_option("--c", a.c, "evaluate the limit at this ratio M/N");
  moment->add_option("--c-prime", a.c_prime, "second-order shift lim (M - cN)");

  auto* covariance = sub("covariance", "N^2 times the covariance of two traces", detail::cmd_covariance);
  ensemble_opt(covariance);
  covariance->add_option("--v", a.v, "first word")->required();
  covariance->add_option("--w", a.w, "second word")->required();
  covariance->add_option("--alphabet", a.alphabet, "alphabet size (default: largest letter)");
  dims_opt(covariance);
  max_n_opt(covariance);
  covariance->add_flag("--limit", a.limit, "large-N limit");
  covariance->add_option("--c", a.c, "evaluate the limit at this ratio M/N");

  auto* cumulant = sub("cumulant", "classical cumulant of traces", detail::cmd_cumulant);
  ensemble_opt(cumulant);
  words_opt(cumulant);
  dims_opt(cumulant);
  max_n_opt(cumulant);
  auto* by_sum = cumulant->add_flag("--connected", a.connected_sum, "sum over connected permutations");
  auto* by_mobius = cumulant->add_flag("--mobius", a.mobius, "Moebius inversion over set partitions (default)");
  by_sum->excludes(by_mobius);

  auto* simulate = sub("simulate", "Monte Carlo estimate of a trace product", detail::cmd_simulate);
  ensemble_opt(simulate);
  words_opt(simulate);
  dims_opt(simulate);
  max_n_opt(simulate);
  simulate->add_option("--trials", a.trials, "number of trials")->check(CLI::Range(std::size_t{2}, std::size_t{100000000}));
  simulate->add_option("--seed", a.seed, std::string("master seed (default: $") + kSeedVariable + ")");

  auto* defect = sub("defect", "genus defect for any number of circles", detail::cmd_defect);
  shape_opt(defect);
  perm_opt(defect);

  auto* verify_cmd = sub("verify", "run the acceptance suite", detail::cmd_verify);
  verify_cmd->add_option("--criterion", a.criterion, "run a single criterion")->check(CLI::Range(1, 13));
  verify_cmd->add_option("--trials", a.trials, "Monte Carlo trials")->check(CLI::Range(std::size_t{2}, std::size_t{100000000}));
  verify_cmd->add_option("--seed", a.seed, "master seed");

  try {
    a.seed = detail::seed_from_env();
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  for (auto& [s, handler] : commands) {
    if (!s->parsed()) continue;
    try {
      return handler(a, out);
    } catch (const UsageError& e) {
      err << "error: " << e.what() << "\n" << s->help();
      return 2;
    } catch (const ParseError& e) {
      err << "error: " << e.what() << "\n";
      return 2;
    } catch (const Error& e) {
      err << "error: " << e.what() << "\n";
      return 1;
    } catch (const std::exception& e) {
      err << "internal error: " << e.what() << "\n";
      return 1;
    }
  }
  return 2;
}

}  // namespace annulus::cli
