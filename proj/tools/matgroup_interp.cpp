#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mgi/cohom.hpp"
#include "mgi/deform.hpp"
#include "mgi/error.hpp"
#include "mgi/group_set.hpp"
#include "mgi/interp.hpp"
#include "mgi/json_io.hpp"
#include "mgi/matrix.hpp"
#include "mgi/report.hpp"
#include "mgi/ring.hpp"
#include "mgi/suites.hpp"
#include "mgi/word.hpp"

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// `out` is either a format name (json, csv, md -> stdout) or a file path
// whose extension picks the format.
struct OutSpec {
  std::string format;
  std::string path;  // empty -> stdout
};

OutSpec parse_out(const std::string& out) {
  if (out == "json" || out == "csv" || out == "md") return {out, ""};
  for (const char* ext : {".json", ".csv", ".md"}) {
    if (out.size() > std::string(ext).size() && out.ends_with(ext)) {
      return {std::string(ext).substr(1), out};
    }
  }
  throw UsageError("--out must be json, csv, md, or a file named *.json, "
                   "*.csv, or *.md (got \"" + out + "\")");
}

void write_text(const OutSpec& spec, const std::string& text) {
  if (spec.path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(spec.path, std::ios::binary);
  if (!out) throw UsageError("cannot write file: " + spec.path);
  out << text;
}

int emit_reports(const std::vector<mgi::Report>& reports,
                 const std::string& out) {
  const OutSpec spec = parse_out(out);
  std::string text;
  if (spec.format == "json") {
    text = reports.size() == 1 ? reports[0].to_json()
                               : mgi::reports_to_json(reports);
  } else if (spec.format == "csv") {
    text = reports.size() == 1 ? reports[0].to_csv()
                               : mgi::reports_to_csv(reports);
  } else {
    text = reports.size() == 1 ? reports[0].to_markdown()
                               : mgi::reports_to_markdown(reports);
  }
  write_text(spec, text);
  for (const mgi::Report& r : reports) {
    if (!r.all_pass()) return 1;
  }
  return 0;
}

struct VerifyArgs {
  std::string suite;
  std::string ring = "gf:3";
  std::uint32_t n = 3;
  std::uint64_t seed = 20250816;
  std::uint64_t cap = 200000;
  bool cap_given = false;
  std::string out = "json";
  bool timings = false;
};

mgi::Report run_one_suite(const std::string& name, const mgi::RingSpec& spec,
                          const VerifyArgs& a) {
  const std::uint64_t deform_cap = a.cap_given ? a.cap : 2048;
  const auto started = std::chrono::steady_clock::now();
  mgi::Report rep;
  if (name == "steinberg") {
    rep = mgi::steinberg_suite(spec, a.n);
  } else if (name == "decompose") {
    rep = mgi::decompose_suite(spec, a.n, a.seed, a.cap);
  } else if (name == "interp") {
    rep = mgi::interp_suite(spec, a.n, a.seed);
  } else if (name == "definable") {
    rep = mgi::definable_suite(spec, a.n, a.cap);
  } else if (name == "a4") {
    rep = mgi::a4_suite(spec, a.n, a.cap);
  } else if (name == "cohom") {
    rep = mgi::cohom_suite(spec, a.n, a.seed);
  } else if (name == "deform") {
    rep = mgi::deform_suite(spec, a.n, deform_cap);
  } else {
    throw UsageError("unknown suite \"" + name +
                     "\" (expected steinberg, decompose, interp, definable, "
                     "a4, cohom, deform, or all)");
  }
  if (a.timings) {
    rep.wall_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - started)
                      .count();
  }
  return rep;
}

int cmd_verify(const VerifyArgs& a) {
  const mgi::RingSpec spec = mgi::parse_ring(a.ring);
  std::vector<mgi::Report> reports;
  if (a.suite == "all") {
    for (const char* name : {"steinberg", "decompose", "interp", "definable",
                             "a4", "cohom", "deform"}) {
      reports.push_back(run_one_suite(name, spec, a));
    }
  } else {
    reports.push_back(run_one_suite(a.suite, spec, a));
  }
  return emit_reports(reports, a.out);
}

int cmd_decompose(const std::string& path) {
  const mgi::Matrix m = mgi::matrix_from_json(read_file(path));
  const mgi::TransvectionWord w = mgi::is_one(m.ring(), mgi::det(m))
                                      ? mgi::decompose_sl(m)
                                      : mgi::decompose_gl(m);
  std::cout << mgi::word_to_json(w) << "\n";
  return 0;
}

int cmd_interpret(const std::string& op, const std::string& lhs,
                  const std::string& rhs, const std::string& ring,
                  std::uint32_t n, const std::string& host_name) {
  const mgi::RingSpec spec = mgi::parse_ring(ring);
  mgi::host_kind host = mgi::host_kind::sl;
  if (host_name == "gl") {
    host = mgi::host_kind::gl;
  } else if (host_name == "tri") {
    host = mgi::host_kind::tri;
  } else if (host_name != "sl") {
    throw UsageError("--host must be sl, gl, or tri");
  }
  const mgi::InterpretedRing r = mgi::make_interp(spec, n, host);
  const mgi::Matrix x = mgi::carrier_elem(r, mgi::elem_from_string(spec, lhs));
  const mgi::Matrix y = mgi::carrier_elem(r, mgi::elem_from_string(spec, rhs));
  mgi::Matrix z = mgi::identity(spec, n);
  if (op == "add") {
    z = mgi::interp_add(r, x, y);
  } else if (op == "mul") {
    z = mgi::interp_product(r, x, y);
  } else {
    throw UsageError("operation must be add or mul (got \"" + op + "\")");
  }
  std::cout << mgi::elem_to_string(spec, mgi::carrier_value(r, z)) << "\n";
  return 0;
}

int cmd_deform_build(const std::string& path, const std::string& check,
                     std::uint64_t cap, const std::string& out) {
  if (check != "basic" && check != "all") {
    throw UsageError("--check must be basic or all");
  }
  const mgi::DeformContext ctx = mgi::deform_from_json(read_file(path));
  const mgi::TnInstance inst = mgi::tn_instance(ctx, cap);

  mgi::Report rep("deform-build");
  rep.set_param("ring", mgi::ring_to_string(ctx.ring));
  rep.set_param("n", std::to_string(ctx.n));
  rep.set_param("Z", ctx.z.describe());
  rep.add("group-order", "|T_n(R, f, Z)|", std::to_string(inst.table.size),
          std::to_string(inst.table.size));
  rep.add_bool("group-axioms",
               "identity, inverses, and associativity hold in the table",
               true);  // tn_instance throws before reaching here otherwise

  if (check == "all") {
    if (ctx.ring.modulus >= 3) {
      const std::vector<mgi::DeformedTnElem> center = mgi::tn_center(ctx, cap);
      rep.add("center", "the center is the copy of Z",
              std::to_string(ctx.z.size()), std::to_string(center.size()));
    }
    const std::vector<mgi::DeformedTnElem> derived =
        mgi::tn_derived_subgroup(ctx, cap);
    bool unipotent = true;
    for (const mgi::DeformedTnElem& e : derived) {
      unipotent = unipotent && e.t.z == 0 && mgi::is_upper_unitriangular(e.u);
    }
    rep.add("derived", "the derived subgroup is unipotent",
            std::to_string(inst.ut_count) + " unipotent",
            std::to_string(derived.size()) +
                (unipotent ? " unipotent" : " mixed"));

    bool trivial = true;
    for (std::uint32_t v : ctx.f.table) trivial = trivial && v == 0;
    if (trivial && ctx.z.orders ==
                       std::vector<std::uint32_t>{ctx.ring.modulus - 1}) {
      const mgi::CollapseIso iso = mgi::trivial_collapse_iso(ctx, cap);
      for (mgi::CheckRecord r : iso.report.records()) {
        r.id = "collapse-" + r.id;
        rep.add(std::move(r));
      }
    }
  }
  return emit_reports({rep}, out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact matrix-group calculator: verification suites, "
               "transvection decompositions, ring interpretations, and "
               "deformed triangular groups"};
  app.require_subcommand(1);

  VerifyArgs va;
  CLI::App* verify = app.add_subcommand(
      "verify", "run a verification suite and emit its report");
  verify->add_option("suite", va.suite,
                     "steinberg | decompose | interp | definable | a4 | "
                     "cohom | deform | all")
      ->required();
  verify->add_option("--ring", va.ring, "ring spec (gf:q, zmod:m, q)");
  verify->add_option("--n", va.n, "matrix size");
  verify->add_option("--seed", va.seed, "seed for randomized checks");
  CLI::Option* cap_opt =
      verify->add_option("--cap", va.cap, "enumeration cap");
  verify->add_option("--out", va.out, "json | csv | md, or an output file");
  verify->add_flag("--timings", va.timings, "record wall times in reports");

  std::string matrix_path;
  CLI::App* decompose = app.add_subcommand(
      "decompose", "write an invertible matrix as a transvection word");
  decompose->add_option("matrix", matrix_path, "matrix JSON file")->required();

  std::string op, lhs, rhs, host = "sl";
  std::string interp_ring = "gf:3";
  std::uint32_t interp_n = 3;
  CLI::App* interpret = app.add_subcommand(
      "interpret", "compute in the ring carried by a one-parameter subgroup");
  interpret->add_option("op", op, "add | mul")->required();
  interpret->add_option("lhs", lhs, "left operand, as an element string")
      ->required();
  interpret->add_option("rhs", rhs, "right operand, as an element string")
      ->required();
  interpret->add_option("--ring", interp_ring, "ring spec");
  interpret->add_option("--n", interp_n, "matrix size");
  interpret->add_option("--host", host, "sl | gl | tri");

  std::string deform_path, deform_check = "basic", deform_out = "json";
  std::uint64_t deform_cap = 2048;
  CLI::App* deform = app.add_subcommand(
      "deform", "build and verify a deformed triangular group");
  CLI::App* deform_build = deform->add_subcommand(
      "build", "construct the instance described by a deformation file");
  deform_build->add_option("file", deform_path, "deformation JSON file")
      ->required();
  deform_build->add_option("--check", deform_check, "basic | all");
  deform_build->add_option("--cap", deform_cap, "instance size cap");
  deform_build->add_option("--out", deform_out,
                           "json | csv | md, or an output file");
  deform->require_subcommand(1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (*verify) {
      va.cap_given = cap_opt->count() > 0;
      return cmd_verify(va);
    }
    if (*decompose) return cmd_decompose(matrix_path);
    if (*interpret) {
      return cmd_interpret(op, lhs, rhs, interp_ring, interp_n, host);
    }
    if (*deform_build) {
      return cmd_deform_build(deform_path, deform_check, deform_cap,
                              deform_out);
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const mgi::json_parse_error& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const mgi::error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
