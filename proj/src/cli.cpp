#include "isocoh/cli.hpp"

#include <charconv>
#include <filesystem>
#include <optional>
#include <ostream>

#include "CLI11.hpp"

#include "isocoh/catalog.hpp"
#include "isocoh/cohomology.hpp"
#include "isocoh/toric.hpp"
#include "isocoh/transform.hpp"

namespace isocoh::cli {

namespace {

struct Invocation {
  std::string command;
  std::string surface;
  std::string class_text;
  std::string box_text;
  std::string format = "text";
  std::size_t max_iterations = 1000;
  bool strict = false;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Box {
  Integer lo = 0;
  Integer hi = 0;
};

Box parse_box(const std::string& text) {
  const auto dots = text.find("..");
  if (dots == std::string::npos) throw UsageError("--box expects <lo>..<hi>, got '" + text + "'");
  auto parse = [&](std::string_view s) {
    Integer v = 0;
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
      throw UsageError("--box bound '" + std::string(s) + "' is not an integer");
    return v;
  };
  Box b{parse(std::string_view(text).substr(0, dots)), parse(std::string_view(text).substr(dots + 2))};
  if (b.lo > b.hi) throw UsageError("--box lower bound exceeds upper bound");
  return b;
}

std::string basis_list(const SurfaceModel& s) {
  std::string out;
  for (const auto& b : s.basis()) out += (out.empty() ? "" : ", ") + b;
  return out;
}

DivisorClass class_for(const Invocation& inv, const SurfaceModel& s) {
  if (inv.class_text.empty()) throw UsageError("--class is required for " + inv.command);
  DivisorClass d;
  try {
    d = parse_class(inv.class_text);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("--class: ") + e.what());
  }
  if (d.rank() != s.rank())
    throw UsageError("--class has " + std::to_string(d.rank()) + " coefficients but " + s.name() +
                     " has rank " + std::to_string(s.rank()) + " (basis " + basis_list(s) + ")");
  return d;
}

std::vector<Integer> as_vector(const DivisorClass& d) {
  return {d.coefficients().begin(), d.coefficients().end()};
}

std::optional<ToricModel> toric_partner(const SurfaceModel& s) {
  if (!has_toric_model(s.name())) return std::nullopt;
  ToricModel m = toric_model(s.name());
  if (m.toric.picard_rank() != s.rank()) return std::nullopt;
  return m;
}

// Bare file names of shipped fixtures also resolve against the data directory.
SurfaceModel load_named_surface(const Invocation& inv) {
  const std::filesystem::path given{inv.surface};
#ifdef ISOCOH_DATA_DIR
  const std::filesystem::path shipped = std::filesystem::path(ISOCOH_DATA_DIR) / given;
  if (!std::filesystem::exists(given) && !is_catalog_name(inv.surface) &&
      given.filename() == given && std::filesystem::exists(shipped))
    return resolve_surface(shipped.string(), {inv.strict});
#endif
  return resolve_surface(inv.surface, {inv.strict});
}

bool is_hirzebruch_shaped(const SurfaceModel& s) {
  const auto& f = s.form();
  return s.regime() == Regime::toric_convex_fan && s.rank() == 2 && f.at(0, 0) <= 0 &&
         f.at(0, 1) == 1 && f.at(1, 1) == 0 &&
         s.canonical_class() == DivisorClass{-2, f.at(0, 0) - 2};
}

int cmd_cohomology(const Invocation& inv, const SurfaceModel& s, std::ostream& out) {
  const DivisorClass d = class_for(inv, s);
  const auto r = cohomology(s, d, {inv.max_iterations});
  if (inv.format == "json")
    out << to_json(r).dump(2) << "\n";
  else
    out << render_text(r);
  return kSuccess;
}

int cmd_transform(const Invocation& inv, const SurfaceModel& s, std::ostream& out) {
  const DivisorClass d = class_for(inv, s);
  if (!is_effective(s, d))
    throw UsageError("class " + d.to_string() + " is not effective on " + s.name() +
                     "; the transform is only defined on effective classes");
  const auto trace = iterate_to_nef(s, d, {inv.max_iterations});
  if (inv.format == "json")
    out << to_json(trace).dump(2) << "\n";
  else
    out << render_text(trace);
  return kSuccess;
}

int cmd_catalog(const Invocation& inv, std::ostream& out) {
  if (inv.surface.empty()) {
    const auto names = catalog_names();
    if (inv.format == "json") {
      out << nlohmann::json{{"surfaces", names}}.dump(2) << "\n";
    } else {
      for (const auto& n : names) out << n << "\n";
      out << "(any f<n> with n >= 0 is also accepted)\n";
    }
    return kSuccess;
  }
  const SurfaceModel s = load_named_surface(inv);
  const Integer k_squared = intersect(s, s.canonical_class(), s.canonical_class());
  if (inv.format == "json") {
    out << nlohmann::json{{"name", s.name()},
                          {"basis", s.basis()},
                          {"canonical_self_intersection", k_squared},
                          {"negative_curve_count", s.negative_curves().size()},
                          {"spec", to_json(spec_of(s))}}
               .dump(2)
        << "\n";
    return kSuccess;
  }
  auto list = [&](const char* title, const std::vector<DivisorClass>& classes, bool self) {
    out << title << " (" << classes.size() << "):\n";
    for (const auto& c : classes) {
      out << "  " << c.to_string();
      if (self) out << "  self-intersection " << intersect(s, c, c);
      out << "\n";
    }
  };
  out << "surface: " << s.name() << "\n";
  out << "regime: " << to_string(s.regime()) << "\n";
  out << "basis: " << basis_list(s) << "\n";
  out << "intersection form:";
  for (const auto& row : s.form().rows()) out << " " << DivisorClass(row).to_string();
  out << "\n";
  out << "canonical class K: " << s.canonical_class().to_string() << "\n";
  out << "K^2: " << k_squared << "\n";
  out << "chi(O_S): " << s.chi_structure_sheaf() << "\n";
  list("negative curves", s.negative_curves(), true);
  list("mori generators", s.mori_generators(), false);
  list("effective generators", s.effective_generators(), false);
  return kSuccess;
}

int cmd_oracle_check(const Invocation& inv, const SurfaceModel& s, std::ostream& out) {
  const DivisorClass d = class_for(inv, s);
  auto partner = toric_partner(s);
  if (!partner)
    throw UsageError("no toric model for " + s.name() + "; oracle-check supports f<n>, dp1, dp2, dp3");
  const auto r = cohomology(s, d, {inv.max_iterations});
  const Integer oracle = oracle_h0(partner->toric, d);
  const bool agree = r.h0 && *r.h0 == oracle;
  if (inv.format == "json") {
    out << nlohmann::json{{"class", as_vector(d)},
                          {"pipeline_h0", r.h0 ? nlohmann::json(*r.h0) : nlohmann::json(nullptr)},
                          {"oracle_h0", oracle},
                          {"agree", agree}}
               .dump(2)
        << "\n";
  } else {
    out << "class: " << d.to_string() << "\n";
    out << "pipeline h0: " << (r.h0 ? std::to_string(*r.h0) : "?") << "\n";
    out << "oracle h0: " << oracle << "\n";
    out << (agree ? "agree" : "MISMATCH") << "\n";
  }
  return agree ? kSuccess : kMismatch;
}

int cmd_scan(const Invocation& inv, const SurfaceModel& s, std::ostream& out) {
  if (inv.box_text.empty()) throw UsageError("--box is required for scan");
  const Box box = parse_box(inv.box_text);
  const auto side = static_cast<double>(box.hi - box.lo + 1);
  double total = 1;
  for (std::size_t i = 0; i < s.rank(); ++i) total *= side;
  if (total > 5e7)
    throw UsageError("box of " + std::to_string(static_cast<long long>(total)) +
                     " classes is too large for a scan; narrow --box");

  const auto partner = toric_partner(s);
  const bool hirzebruch = is_hirzebruch_shaped(s);
  const TransformOptions options{inv.max_iterations};

  std::size_t classes = 0, effective = 0, uncertified = 0, mismatches = 0, max_steps = 0;
  nlohmann::json examples = nlohmann::json::array();
  std::vector<std::string> text_examples;
  auto record = [&](const DivisorClass& d, const std::string& why) {
    ++mismatches;
    if (examples.size() < 10) {
      examples.push_back({{"class", as_vector(d)}, {"reason", why}});
      text_examples.push_back(d.to_string() + ": " + why);
    }
  };

  std::vector<Integer> coeffs(s.rank(), box.lo);
  while (true) {
    const DivisorClass d(coeffs);
    ++classes;
    try {
      const auto r = cohomology(s, d, options);
      if (r.trace) {
        ++effective;
        max_steps = std::max(max_steps, r.trace->steps.size());
      }
      if (!r.h0) ++uncertified;
      if (partner) {
        const Integer oracle = oracle_h0(partner->toric, d);
        if (!r.h0 || *r.h0 != oracle)
          record(d, "pipeline h0 " + (r.h0 ? std::to_string(*r.h0) : std::string("?")) +
                        " != oracle h0 " + std::to_string(oracle));
      }
      if (r.trace && r.h0) {
        if (s.regime() == Regime::del_pezzo && del_pezzo_h0(s, d) != *r.h0)
          record(d, "del Pezzo closed form " + std::to_string(del_pezzo_h0(s, d)) +
                        " != pipeline h0 " + std::to_string(*r.h0));
        if (hirzebruch && hirzebruch_h0(s, d) != *r.h0)
          record(d, "Hirzebruch closed form " + std::to_string(hirzebruch_h0(s, d)) +
                        " != pipeline h0 " + std::to_string(*r.h0));
      }
      if (r.h0 && r.h1 && r.h2 && *r.h0 - *r.h1 + *r.h2 != r.chi)
        record(d, "h0 - h1 + h2 != chi");
    } catch (const std::exception& e) {
      record(d, e.what());
    }
    std::size_t pos = coeffs.size();
    while (pos > 0 && coeffs[pos - 1] == box.hi) coeffs[--pos] = box.lo;
    if (pos == 0) break;
    ++coeffs[pos - 1];
  }

  if (inv.format == "json") {
    out << nlohmann::json{{"surface", s.name()},
                          {"box", {box.lo, box.hi}},
                          {"classes", classes},
                          {"effective", effective},
                          {"uncertified", uncertified},
                          {"max_steps", max_steps},
                          {"oracle", partner.has_value()},
                          {"mismatches", mismatches},
                          {"first_mismatches", examples}}
               .dump(2)
        << "\n";
  } else {
    out << "surface: " << s.name() << "\n";
    out << "box: " << box.lo << ".." << box.hi << "\n";
    out << "oracle: " << (partner ? "toric lattice-point count" : "none (closed forms and identities only)")
        << "\n";
    out << "classes: " << classes << "\n";
    out << "effective: " << effective << "\n";
    out << "uncertified: " << uncertified << "\n";
    out << "max steps: " << max_steps << "\n";
    for (const auto& e : text_examples) out << "  " << e << "\n";
    out << "mismatches: " << mismatches << "\n";
  }
  return mismatches == 0 ? kSuccess : kMismatch;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Line bundle cohomology on smooth projective surfaces via the isoparametric transform",
               "isocoh"};
  app.require_subcommand(1);
  Invocation inv;

  auto add_common = [&](CLI::App* sub, bool needs_class) {
    sub->add_option("--surface", inv.surface, "catalog name (dp0..dp8, f<n>) or JSON spec file path")
        ->required(sub->get_name() != "catalog");
    if (needs_class)
      sub->add_option("--class", inv.class_text, "comma-separated coefficients in the surface basis")
          ->required()
          ->allow_extra_args(false);
    sub->add_option("--format", inv.format, "text or json")
        ->check(CLI::IsMember({"text", "json"}));
    sub->add_option("--max-iterations", inv.max_iterations, "iteration cap for the transform")
        ->check(CLI::PositiveNumber);
    sub->add_flag("--strict-validation", inv.strict,
                  "also check the Hodge-index signature of spec files");
  };
  auto* cohom = app.add_subcommand("cohomology", "h0, h1, h2 and chi of a class with its certificate");
  add_common(cohom, true);
  auto* trans = app.add_subcommand("transform", "trace of the iterated isoparametric transform");
  add_common(trans, true);
  auto* cat = app.add_subcommand("catalog", "surface data: basis, K, negative curves, cones");
  add_common(cat, false);
  auto* oracle = app.add_subcommand("oracle-check", "compare pipeline h0 with the toric oracle");
  add_common(oracle, true);
  auto* scan = app.add_subcommand("scan", "sweep a coefficient box and count disagreements");
  add_common(scan, false);
  scan->add_option("--box", inv.box_text, "coefficient range <lo>..<hi>")->required();

  // Values such as "-6..6" or "-1,2" must not be mistaken for flags.
  std::vector<std::string> normalized;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if ((args[i] == "--class" || args[i] == "--box") && i + 1 < args.size()) {
      normalized.push_back(args[i] + "=" + args[i + 1]);
      ++i;
    } else {
      normalized.push_back(args[i]);
    }
  }
  std::vector<std::string> reversed(normalized.rbegin(), normalized.rend());

  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  for (auto* sub : app.get_subcommands()) inv.command = sub->get_name();

  try {
    if (inv.command == "catalog") return cmd_catalog(inv, out);
    const SurfaceModel s = load_named_surface(inv);
    if (inv.command == "cohomology") return cmd_cohomology(inv, s, out);
    if (inv.command == "transform") return cmd_transform(inv, s, out);
    if (inv.command == "oracle-check") return cmd_oracle_check(inv, s, out);
    return cmd_scan(inv, s, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ValidationError& e) {
    err << "error: invalid surface: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }
}

}  // namespace isocoh::cli
