#include "cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gpdind/document.hpp"
#include "gpdind/imprimitivity.hpp"
#include "gpdind/induction.hpp"
#include "gpdind/spectrum.hpp"

namespace gpdind::cli {

namespace fs = std::filesystem;

namespace {

struct Common {
  double null_tol = 1e-9;
  double rank_tol = 1e-8;
  double residual_tol = 1e-10;
  std::uint64_t seed = 0x5eed;
  std::string format = "table";

  TheoremOptions theorem() const {
    TheoremOptions o;
    o.induction.null_tol = null_tol;
    o.rank_tol = rank_tol;
    o.residual_tol = residual_tol;
    o.seed = seed;
    return o;
  }
  IrrepOptions irreps() const {
    IrrepOptions o;
    o.seed = seed;
    o.rank_tol = rank_tol;
    return o;
  }
  Json stamp() const {
    return {{"seed", seed},
            {"tolerances", {{"null_tol", null_tol}, {"rank_tol", rank_tol}, {"residual_tol", residual_tol}}}};
  }
  bool json() const { return format == "json"; }
};

int code_for(const Error& e) { return e.kind() == ErrorKind::MalformedSpec ? kParse : kSemantic; }

std::string sci(double v) {
  std::ostringstream os;
  os << std::scientific << std::setprecision(2) << v;
  return os.str();
}

AlgebraPtr document_algebra(const GroupoidDocument& doc) { return make_algebra(doc.groupoid, doc.haar_or_counting()); }

AlgebraPtr sub_algebra(const GroupoidDocument& doc, const Subgroupoid& h) {
  return make_algebra(h.groupoid(), doc.haar_or_counting().restrict_to(h));
}

Json verdict_json(const std::string& groupoid, const std::string& unit, const std::string& label,
                  const TheoremVerdict& v) {
  return {{"groupoid", groupoid},
          {"unit", unit},
          {"irrep_label", label},
          {"induced_dim", v.induced_dim},
          {"commutant_dim", v.commutant_dim},
          {"xind_commutant_dim", v.xind_commutant_dim},
          {"transfer_residual", v.transfer_residual},
          {"transfer_inorm_excess", v.transfer_inorm_excess},
          {"pass", v.pass}};
}

void print_table(std::ostream& out, const std::vector<std::string>& header,
                 const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width(header.size());
  for (std::size_t c = 0; c < header.size(); ++c) {
    width[c] = header[c].size();
    for (const auto& r : rows) width[c] = std::max(width[c], r[c].size());
  }
  auto line = [&](const std::vector<std::string>& r) {
    for (std::size_t c = 0; c < r.size(); ++c) {
      out << std::left << std::setw(static_cast<int>(width[c])) << r[c] << (c + 1 < r.size() ? "  " : "\n");
    }
  };
  line(header);
  for (const auto& r : rows) line(r);
}

// validate -------------------------------------------------------------------

int cmd_validate(const std::string& file, const Common& common, std::ostream& out, std::ostream& err) {
  try {
    const auto doc = load_groupoid_document(file);
    const auto haar = doc.haar_or_counting();
    const char* mode = !doc.haar ? "counting" : haar.is_exact() ? "exact" : "floating";
    if (common.json()) {
      out << Json{{"file", file}, {"name", doc.name}, {"valid", true}, {"elements", doc.groupoid.size()},
                  {"units", doc.groupoid.units().size()}, {"haar", mode}}
                 .dump(2)
          << "\n";
    } else {
      out << "ok  " << doc.name << ": " << doc.groupoid.size() << " elements, " << doc.groupoid.units().size()
          << " units, haar " << mode << "\n";
    }
    return kOk;
  } catch (const Error& e) {
    if (common.json()) {
      out << Json{{"file", file}, {"valid", false}, {"error", e.what()}}.dump(2) << "\n";
    }
    err << "invalid  " << file << ": " << e.what() << "\n";
    return code_for(e);
  }
}

// induce ---------------------------------------------------------------------

struct InduceArgs {
  std::string file;
  std::string unit;
  int irrep = -1;
  std::string rep_file;
};

int cmd_induce(const InduceArgs& a, const Common& common, std::ostream& out, std::ostream& err) {
  try {
    const auto doc = load_groupoid_document(a.file);
    const auto alg = document_algebra(doc);
    const Index u = doc.groupoid.resolve_unit(a.unit);
    const auto iso = isotropy_algebra(alg, u);

    std::optional<Representation> inner;
    std::string label;
    if (!a.rep_file.empty()) {
      std::ifstream in(a.rep_file);
      if (!in) fail(ErrorKind::MalformedSpec, "cannot open " + a.rep_file);
      Json j;
      try {
        j = Json::parse(in);
      } catch (const Json::parse_error& e) {
        fail(ErrorKind::MalformedSpec, a.rep_file + ": " + e.what());
      }
      inner = parse_representation(iso, j);
      if (!inner->report().ok) fail(ErrorKind::InvalidRep, a.rep_file + " is not a representation of G(u)");
      label = fs::path(a.rep_file).stem().string();
    } else {
      auto irreps = group_irreps(iso, common.irreps());
      if (a.irrep < 0 || static_cast<std::size_t>(a.irrep) >= irreps.size()) {
        fail(ErrorKind::MalformedSpec, "irrep index " + std::to_string(a.irrep) + " out of range (G(u) has " +
                                           std::to_string(irreps.size()) + " irreducibles)");
      }
      inner = std::move(irreps[static_cast<std::size_t>(a.irrep)]);
      label = std::to_string(a.irrep);
    }

    const auto v = main_theorem_check(alg, u, *inner, common.theorem());
    if (common.json()) {
      Json j = verdict_json(doc.name, doc.groupoid.unit_label(u), label, v);
      j.update(common.stamp());
      out << j.dump(2) << "\n";
    } else {
      out << "groupoid           " << doc.name << "\n"
          << "unit               " << doc.groupoid.unit_label(u) << "\n"
          << "irrep              " << label << " (dim " << inner->dim() << ")\n"
          << "induced_dim        " << v.induced_dim << "\n"
          << "commutant_dim      " << v.commutant_dim << "\n"
          << "irreducible        " << (v.commutant_dim == 1 ? "yes" : "no") << "\n"
          << "transfer_residual  " << sci(v.transfer_residual) << "\n"
          << "pass               " << (v.pass ? "yes" : "no") << "\n";
    }
    return v.pass ? kOk : kCheckFailed;
  } catch (const Error& e) {
    // An unknown irrep index is a usage problem, not a parse failure.
    err << "error: " << e.what() << "\n";
    if (e.kind() == ErrorKind::MalformedSpec && std::string(e.what()).find("irrep index") != std::string::npos) {
      return kSemantic;
    }
    return code_for(e);
  }
}

// stages ---------------------------------------------------------------------

struct StagesArgs {
  std::string file;
  std::string chain;
  int irrep = 0;
};

int cmd_stages(const StagesArgs& a, const Common& common, std::ostream& out, std::ostream& err) {
  try {
    const auto doc = load_groupoid_document(a.file);
    const auto comma = a.chain.find(',');
    if (comma == std::string::npos) fail(ErrorKind::ChainViolation, "--chain expects H,K");
    const std::string h_name = a.chain.substr(0, comma);
    const std::string k_name = a.chain.substr(comma + 1);

    const auto alg = document_algebra(doc);
    const Subgroupoid h = resolve_subgroupoid(doc, h_name);
    const Subgroupoid k = resolve_subgroupoid(doc, k_name);
    if (!h.is_subset_of(k)) fail(ErrorKind::ChainViolation, h_name + " is not contained in " + k_name);
    const auto h_alg = sub_algebra(doc, h);
    const auto k_alg = sub_algebra(doc, k);

    Representation inner = [&] {
      if (h.groupoid().is_group()) {
        auto irreps = group_irreps(h_alg, common.irreps());
        if (a.irrep < 0 || static_cast<std::size_t>(a.irrep) >= irreps.size()) {
          fail(ErrorKind::ChainViolation, "irrep index out of range for " + h_name);
        }
        return std::move(irreps[static_cast<std::size_t>(a.irrep)]);
      }
      if (a.irrep != 0) fail(ErrorKind::ChainViolation, h_name + " is not a group; only the trivial L is available");
      return trivial_representation(h_alg);
    }();

    InductionOptions opts;
    opts.null_tol = common.null_tol;
    const auto report = stages_check(alg, k, k_alg, h, inner, opts);
    const bool pass = report.direct_dim == report.staged_dim &&
                      report.intertwining_residual <= common.residual_tol &&
                      report.unitarity_defect <= common.residual_tol;
    if (common.json()) {
      Json j{{"groupoid", doc.name},
             {"chain", {h_name, k_name}},
             {"direct_dim", report.direct_dim},
             {"staged_dim", report.staged_dim},
             {"intertwining_residual", report.intertwining_residual},
             {"unitarity_defect", report.unitarity_defect},
             {"pass", pass}};
      j.update(common.stamp());
      out << j.dump(2) << "\n";
    } else {
      out << "groupoid               " << doc.name << "\n"
          << "chain                  " << h_name << " < " << k_name << " < G\n"
          << "direct_dim             " << report.direct_dim << "\n"
          << "staged_dim             " << report.staged_dim << "\n"
          << "intertwining_residual  " << sci(report.intertwining_residual) << "\n"
          << "unitarity_defect       " << sci(report.unitarity_defect) << "\n"
          << "pass                   " << (pass ? "yes" : "no") << "\n";
    }
    return pass ? kOk : kCheckFailed;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return code_for(e);
  }
}

// harness --------------------------------------------------------------------

int cmd_harness(std::string dir, const Common& common, std::ostream& out, std::ostream& err) {
  if (dir.empty()) {
    const char* env = std::getenv("GPDIND_CORPUS");
    if (env == nullptr || *env == '\0') {
      err << "error: no corpus directory given and GPDIND_CORPUS is not set\n";
      return kSemantic;
    }
    dir = env;
  }
  if (!fs::is_directory(dir)) {
    err << "error: " << dir << " is not a directory\n";
    return kSemantic;
  }
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());

  Json rows = Json::array();
  Json errors = Json::array();
  std::vector<std::vector<std::string>> table;
  bool all_pass = true;
  for (const auto& file : files) {
    const std::string stem = file.stem().string();
    try {
      const auto doc = load_groupoid_document(file);
      const auto alg = document_algebra(doc);
      for (Index u : doc.groupoid.units()) {
        const auto irreps = group_irreps(isotropy_algebra(alg, u), common.irreps());
        for (std::size_t k = 0; k < irreps.size(); ++k) {
          const auto v = main_theorem_check(alg, u, irreps[k], common.theorem());
          all_pass = all_pass && v.pass;
          Json row = verdict_json(doc.name, doc.groupoid.unit_label(u), std::to_string(k), v);
          row["file"] = stem;
          rows.push_back(std::move(row));
          table.push_back({stem, doc.groupoid.unit_label(u), std::to_string(k), std::to_string(v.induced_dim),
                           std::to_string(v.commutant_dim), sci(v.transfer_residual), v.pass ? "PASS" : "FAIL"});
        }
      }
    } catch (const Error& e) {
      all_pass = false;
      errors.push_back({{"file", stem}, {"error", e.what()}});
      table.push_back({stem, "-", "-", "-", "-", "-", "ERROR"});
      err << "error: " << file.filename().string() << ": " << e.what() << "\n";
    }
  }

  if (common.json()) {
    Json j{{"rows", std::move(rows)}, {"errors", std::move(errors)}, {"pass", all_pass}};
    j.update(common.stamp());
    out << j.dump(2) << "\n";
  } else {
    print_table(out, {"file", "unit", "irrep", "induced_dim", "commutant_dim", "transfer_residual", "verdict"}, table);
  }
  return all_pass ? kOk : kCheckFailed;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Induced representations of finite groupoid algebras", "gpdind"};
  app.require_subcommand(1);

  Common common;
  app.add_option("--null-tol", common.null_tol, "relative cutoff for the Gram null space")->capture_default_str();
  app.add_option("--rank-tol", common.rank_tol, "relative singular value cutoff for commutants")
      ->capture_default_str();
  app.add_option("--residual-tol", common.residual_tol, "pass threshold for residuals")->capture_default_str();
  app.add_option("--seed", common.seed, "random seed")->capture_default_str();
  app.add_option("--format", common.format, "output format")
      ->check(CLI::IsMember({"table", "json"}))
      ->capture_default_str();

  std::string validate_file;
  auto* validate = app.add_subcommand("validate", "check a groupoid definition file");
  validate->add_option("file", validate_file)->required();

  InduceArgs induce_args;
  auto* induce_cmd = app.add_subcommand("induce", "induce an irreducible of G(u) and certify the result");
  induce_cmd->add_option("file", induce_args.file)->required();
  induce_cmd->add_option("--unit", induce_args.unit, "unit label or name")->required();
  auto* irrep_opt = induce_cmd->add_option("--irrep", induce_args.irrep, "index into group_irreps(G(u))");
  auto* rep_opt = induce_cmd->add_option("--rep", induce_args.rep_file, "representation file for G(u)");
  irrep_opt->excludes(rep_opt);
  rep_opt->excludes(irrep_opt);

  StagesArgs stages_args;
  auto* stages = app.add_subcommand("stages", "check induction in stages along H < K < G");
  stages->add_option("file", stages_args.file)->required();
  stages->add_option("--chain", stages_args.chain, "H,K")->required();
  stages->add_option("--irrep", stages_args.irrep, "irreducible of H when H is a group")->capture_default_str();

  std::string harness_dir;
  auto* harness = app.add_subcommand("harness", "run the induction check over a corpus directory");
  harness->add_option("dir", harness_dir, "corpus directory (default $GPDIND_CORPUS)");

  // Global flags are accepted after the subcommand as well.
  for (auto* sub : {validate, induce_cmd, stages, harness}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kSemantic;
  }

  if (*validate) return cmd_validate(validate_file, common, out, err);
  if (*induce_cmd) {
    if (induce_args.rep_file.empty() && induce_args.irrep < 0) {
      err << "error: induce needs --irrep or --rep\n";
      return kSemantic;
    }
    return cmd_induce(induce_args, common, out, err);
  }
  if (*stages) return cmd_stages(stages_args, common, out, err);
  return cmd_harness(harness_dir, common, out, err);
}

}  // namespace gpdind::cli
