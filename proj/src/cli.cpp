#include "fgpd/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <filesystem>
#include <functional>
#include <sstream>

#include "fgpd/builders.hpp"
#include "fgpd/oracles.hpp"
#include "fgpd/serialize.hpp"
#include "fgpd/theorems.hpp"

namespace fgpd {

namespace {

// Raised for bad command-line input that CLI11 cannot see, such as an
// unknown point name.
class UsageError : public Error {
 public:
  using Error::Error;
};

std::string parse_error_text(const std::string& file, const ParseError& e) {
  std::string kind = e.kind() == ParseError::Kind::syntax   ? "syntax"
                     : e.kind() == ParseError::Kind::schema ? "schema"
                                                            : "version";
  std::string where;
  if (e.kind() == ParseError::Kind::syntax) {
    where = " at line " + std::to_string(e.line()) + ", column " + std::to_string(e.column());
  } else if (!e.path().empty()) {
    where = " at " + e.path();
  }
  return file + ": " + kind + " error" + where + ": " + e.what();
}

template <class T>
T load(const std::string& file) {
  try {
    return parse_as<T>(read_file(file));
  } catch (const ParseError& e) {
    throw UsageError(parse_error_text(file, e));
  }
}

ValidationReport validate_document(const Document& d) {
  return std::visit(
      [](const auto& x) -> ValidationReport {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, FiniteGroupoid>) return validate_groupoid(x);
        if constexpr (std::is_same_v<T, GroupoidMorphism>) return validate_morphism(x);
        if constexpr (std::is_same_v<T, GroupoidAction>) return validate_action(x);
        if constexpr (std::is_same_v<T, PrincipalBundle>) return validate_bundle(x);
        if constexpr (std::is_same_v<T, BundleMorphism>) return validate_bundle_morphism(x);
        if constexpr (std::is_same_v<T, Ggt>) return validate_ggt(x);
        if constexpr (std::is_same_v<T, HSMorphism>) return validate_hs(x);
        if constexpr (std::is_same_v<T, HSMorphismMap>) return validate_hs_morphism(x);
      },
      d);
}

// Structure rules plus the division properties for anything carrying a bundle.
ValidationReport check_document(const Document& d) {
  auto report = validate_document(d);
  if (!report.ok()) return report;
  if (auto const* b = std::get_if<PrincipalBundle>(&d)) report.merge(verify_division_properties(*b));
  if (auto const* h = std::get_if<HSMorphism>(&d)) report.merge(verify_hs_division_properties(*h));
  return report;
}

void print_report(std::ostream& out, const ValidationReport& r) {
  std::istringstream lines(r.to_string());
  for (std::string line; std::getline(lines, line);) out << "  " << line << "\n";
}

// Fails with exit code 1 unless the input validates.
bool require_valid(std::ostream& out, const std::string& what, const ValidationReport& r) {
  if (r.ok()) return true;
  out << what << ": invalid\n";
  print_report(out, r);
  return false;
}

Index point_named(const PrincipalBundle& b, const std::string& name) {
  auto const p = b.find_point(name);
  if (p == kNone) throw UsageError("no point named '" + name + "'");
  return p;
}

std::string arrow_name(const PrincipalBundle& b, Index g) {
  return g == kNone ? "-" : b.groupoid->arrows[g];
}

void emit(std::ostream& out, const std::string& file, const std::string& text) {
  if (file.empty()) {
    out << text;
  } else {
    write_file(file, text);
  }
}

void print_gauge_group(std::ostream& out, const GaugeGroup& gg) {
  auto const& b = *gg.bundle;
  out << "order " << gg.order() << "\n";
  for (std::size_t i = 0; i < gg.order(); ++i) {
    out << "G" << i << ":";
    for (std::size_t p = 0; p < b.size(); ++p) {
      out << " " << b.points[p] << "->" << arrow_name(b, gg.elements[i].values[p]);
    }
    out << "\n";
  }
  out << "table:\n";
  for (std::size_t i = 0; i < gg.order(); ++i) {
    out << " ";
    for (std::size_t j = 0; j < gg.order(); ++j) out << " G" << gg.mul(i, j);
    out << "\n";
  }
}

int print_gauge_groupoid(std::ostream& out, const GaugeGroupoid& gg,
                         const std::vector<std::string>& files, const std::string& export_file) {
  auto const n = gg.bundles.size();
  out << "objects " << n << ", arrows " << gg.arrows.size() << "\n";
  for (std::size_t i = 0; i < n; ++i) out << gg.exported.objects[i] << ": " << files[i] << "\n";
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      std::size_t count = 0;
      for (std::size_t a = 0; a < gg.arrows.size(); ++a) {
        count += gg.source[a] == static_cast<Index>(i) && gg.target[a] == static_cast<Index>(j);
      }
      out << gg.exported.objects[i] << " -> " << gg.exported.objects[j] << ": " << count << "\n";
    }
  }
  auto const report = validate_groupoid(gg.exported);
  if (!export_file.empty()) write_file(export_file, serialize(gg.exported));
  if (!require_valid(out, "gauge groupoid", report)) return kExitFailure;
  out << "gauge groupoid valid\n";
  return kExitOk;
}

std::string fixture_text(const std::string& name) {
  for (auto const& g : fixture_names()) {
    if (name == g) return serialize(named_groupoid(g));
    if (name == "unit-" + g) return serialize(unit_bundle(share(named_groupoid(g))));
    if (name == "hs-id-" + g) {
      return serialize(hs_from_groupoid_morphism(identity_morphism(share(named_groupoid(g)))));
    }
  }
  throw UsageError("unknown fixture '" + name + "'");
}

struct Options {
  std::vector<std::string> files;
  std::string point_p, point_q, output, export_file, report_file, fixture, fixture_dir;
  GeneratorSpec spec;
  SuiteOptions suite;
};

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite groupoids, principal bundles and generalized gauge transformations"};
  app.name("fgpd");
  app.require_subcommand(1);
  Options o;
  std::function<int()> action;

  auto* validate = app.add_subcommand("validate", "Validate structure files");
  validate->add_option("files", o.files, "Input documents")->required();
  validate->callback([&] {
    action = [&] {
      int code = kExitOk;
      for (auto const& file : o.files) {
        Document d;
        try {
          d = parse_document(read_file(file));
        } catch (const ParseError& e) {
          out << parse_error_text(file, e) << "\n";
          code = kExitUsage;
          continue;
        }
        auto const report = validate_document(d);
        out << file << ": " << kind_name(d) << (report.ok() ? " ok" : " INVALID") << "\n";
        print_report(out, report);
        if (!report.ok() && code == kExitOk) code = kExitFailure;
      }
      return code;
    };
  });

  auto* divide = app.add_subcommand("divide", "Division map of a bundle");
  divide->add_option("bundle", o.output, "Bundle document")->required();
  divide->add_option("p", o.point_p, "First point")->required();
  divide->add_option("q", o.point_q, "Second point")->required();
  divide->callback([&] {
    action = [&] {
      auto const b = load<PrincipalBundle>(o.output);
      if (!require_valid(out, o.output, validate_bundle(b))) return kExitFailure;
      auto const p = point_named(b, o.point_p);
      auto const q = point_named(b, o.point_q);
      if (b.projection[p] != b.projection[q]) {
        throw UsageError("points '" + o.point_p + "' and '" + o.point_q +
                         "' lie in different fibres");
      }
      out << arrow_name(b, division_map(b, p, q)) << "\n";
      return kExitOk;
    };
  });

  auto* morphisms = app.add_subcommand("morphisms", "Enumerate bundle morphisms and GGTs");
  morphisms->add_option("bundles", o.files, "Source and target bundles")
      ->required()
      ->expected(2);
  morphisms->callback([&] {
    action = [&] {
      auto const p1 = share(load<PrincipalBundle>(o.files[0]));
      auto const p2 = share(load<PrincipalBundle>(o.files[1]));
      if (!require_valid(out, o.files[0], validate_bundle(*p1)) ||
          !require_valid(out, o.files[1], validate_bundle(*p2))) {
        return kExitFailure;
      }
      auto const bounds = OracleBounds::from_env();
      auto const ms = enumerate_bundle_morphisms(p1, p2, bounds);
      auto const ks = enumerate_ggts(p1, p2, bounds);
      out << "morphisms " << ms.size() << "\n";
      for (auto const& s : ms) {
        out << " ";
        for (std::size_t p = 0; p < p1->size(); ++p) {
          out << " " << p1->points[p] << "->" << p2->points[s.map[p]];
        }
        out << "\n";
      }
      out << "ggts " << ks.size() << "\n";
      if (ms.size() != ks.size()) {
        out << "correspondence.count: morphism and GGT counts differ\n";
        return kExitFailure;
      }
      return kExitOk;
    };
  });

  auto* ggt = app.add_subcommand("ggt", "Operations on generalized gauge transformations");
  ggt->require_subcommand(1);
  ggt->add_option("-o,--output", o.export_file, "Write the result here instead of stdout");
  auto* compose_cmd = ggt->add_subcommand("compose", "Star product K23 * K12");
  compose_cmd->add_option("ggts", o.files, "K23 and K12")->required()->expected(2);
  compose_cmd->callback([&] {
    action = [&] {
      auto const k23 = load<Ggt>(o.files[0]);
      auto const k12 = load<Ggt>(o.files[1]);
      if (!require_valid(out, o.files[0], validate_ggt(k23)) ||
          !require_valid(out, o.files[1], validate_ggt(k12))) {
        return kExitFailure;
      }
      emit(out, o.export_file, serialize(star(k23, k12)));
      return kExitOk;
    };
  });
  auto* invert_cmd = ggt->add_subcommand("invert", "Inverse transformation");
  invert_cmd->add_option("ggt", o.output, "Transformation")->required();
  invert_cmd->callback([&] {
    action = [&] {
      auto const k = load<Ggt>(o.output);
      if (!require_valid(out, o.output, validate_ggt(k))) return kExitFailure;
      emit(out, o.export_file, serialize(invert_ggt(k)));
      return kExitOk;
    };
  });
  auto* identity_cmd = ggt->add_subcommand("identity", "Identity transformation of a bundle");
  identity_cmd->add_option("bundle", o.output, "Bundle")->required();
  identity_cmd->callback([&] {
    action = [&] {
      auto const b = share(load<PrincipalBundle>(o.output));
      if (!require_valid(out, o.output, validate_bundle(*b))) return kExitFailure;
      emit(out, o.export_file, serialize(identity_ggt(b)));
      return kExitOk;
    };
  });

  auto* gauge = app.add_subcommand("gauge-group", "Gauge group of a bundle");
  gauge->add_option("bundle", o.output, "Bundle")->required();
  gauge->callback([&] {
    action = [&] {
      auto const b = share(load<PrincipalBundle>(o.output));
      if (!require_valid(out, o.output, validate_bundle(*b))) return kExitFailure;
      print_gauge_group(out, gauge_group(b));
      return kExitOk;
    };
  });

  auto* hs_gauge = app.add_subcommand("hs-gauge-group", "Left-invariant gauge group of an HS morphism");
  hs_gauge->add_option("hs", o.output, "HS morphism")->required();
  hs_gauge->callback([&] {
    action = [&] {
      auto const h = share(load<HSMorphism>(o.output));
      if (!require_valid(out, o.output, validate_hs(*h))) return kExitFailure;
      print_gauge_group(out, hs_gauge_group(h));
      return kExitOk;
    };
  });

  auto* groupoid = app.add_subcommand("gauge-groupoid", "Gauge groupoid of a family of bundles");
  groupoid->add_option("bundles", o.files, "Bundles over one base")->required();
  groupoid->add_option("--export", o.export_file, "Write the groupoid document here");
  groupoid->callback([&] {
    action = [&] {
      std::vector<BundlePtr> family;
      for (auto const& file : o.files) {
        family.push_back(share(load<PrincipalBundle>(file)));
        if (!require_valid(out, file, validate_bundle(*family.back()))) return kExitFailure;
      }
      auto const gg = build_gauge_groupoid(family, OracleBounds::from_env());
      return print_gauge_groupoid(out, gg, o.files, o.export_file);
    };
  });

  auto* gen = app.add_subcommand("gen", "Generate a seeded random structure");
  gen->require_subcommand(1);
  gen->add_option("--seed", o.spec.seed, "Random seed")->required();
  gen->add_option("--max-objects", o.spec.max_objects, "Objects of the groupoid")
      ->check(CLI::PositiveNumber);
  gen->add_option("--max-group-order", o.spec.max_group_order, "Order of the block groups")
      ->check(CLI::PositiveNumber);
  gen->add_option("--max-base", o.spec.max_base, "Base points")->check(CLI::PositiveNumber);
  gen->add_option("--max-arrows", o.spec.max_arrows, "Arrows of the groupoid")
      ->check(CLI::PositiveNumber);
  gen->add_option("--max-total", o.spec.max_total, "Points of a bundle")
      ->check(CLI::PositiveNumber);
  gen->add_option("-o,--output", o.export_file, "Write the document here instead of stdout");
  gen->add_subcommand("groupoid", "Random groupoid")->callback([&] {
    action = [&] {
      emit(out, o.export_file, serialize(random_groupoid(o.spec)));
      return kExitOk;
    };
  });
  gen->add_subcommand("bundle", "Random principal bundle")->callback([&] {
    action = [&] {
      emit(out, o.export_file, serialize(*random_bundle_pair(o.spec).first));
      return kExitOk;
    };
  });
  gen->add_subcommand("hs", "Random HS morphism")->callback([&] {
    action = [&] {
      emit(out, o.export_file, serialize(*random_hs_pair(o.spec).first));
      return kExitOk;
    };
  });

  auto* theorems = app.add_subcommand("check-theorems", "Run the theorem suite");
  theorems->add_option("--seed", o.suite.seed, "Random seed");
  theorems->add_option("--max-size", o.suite.max_size, "Points per bundle")
      ->check(CLI::Range(4, 16));
  theorems->add_option("--report", o.report_file, "Write the JSON report here");
  theorems->add_option("--fixtures", o.fixture_dir, "Also check every document in this directory")
      ->check(CLI::ExistingDirectory);
  theorems->callback([&] {
    action = [&] {
      bool fixtures_ok = true;
      if (!o.fixture_dir.empty()) {
        std::vector<std::filesystem::path> files;
        for (auto const& entry : std::filesystem::directory_iterator(o.fixture_dir)) {
          if (entry.is_regular_file()) files.push_back(entry.path());
        }
        std::sort(files.begin(), files.end());
        for (auto const& path : files) {
          auto const name = path.filename().string();
          try {
            auto const d = parse_document(read_file(path.string()));
            auto const report = check_document(d);
            out << (report.ok() ? "PASS" : "FAIL") << " fixture " << name << " ("
                << kind_name(d) << ")\n";
            print_report(out, report);
            fixtures_ok = fixtures_ok && report.ok();
          } catch (const ParseError& e) {
            out << "FAIL fixture " << name << "\n  " << parse_error_text(name, e) << "\n";
            fixtures_ok = false;
          }
        }
      }
      auto const report = run_theorem_suite(o.suite);
      out << report.to_text();
      if (!o.report_file.empty()) write_file(o.report_file, report.to_json());
      return report.passed() && fixtures_ok ? kExitOk : kExitFailure;
    };
  });

  auto* fixture = app.add_subcommand("fixture", "Print a built-in fixture document");
  fixture->add_option("name", o.fixture,
                      "Groupoid name, unit-<groupoid> or hs-id-<groupoid>; 'list' lists them")
      ->required();
  fixture->callback([&] {
    action = [&] {
      if (o.fixture == "list") {
        for (auto const& g : fixture_names()) out << g << "\nunit-" << g << "\nhs-id-" << g << "\n";
        return kExitOk;
      }
      out << fixture_text(o.fixture);
      return kExitOk;
    };
  });

  std::vector<const char*> argv{"fgpd"};
  for (auto const& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    auto const code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    return action ? action() : kExitUsage;
  } catch (const InvalidStructureError& e) {
    out << e.what() << "\n";
    print_report(out, e.report());
    return kExitFailure;
  } catch (const IntegrityError& e) {
    out << "integrity: " << e.what() << "\n";
    return kExitFailure;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
  }
  return kExitUsage;
}

}  // namespace fgpd
