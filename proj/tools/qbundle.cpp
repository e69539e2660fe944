#include <iostream>

#include "CLI11.hpp"
#include "qb/parse.hpp"
#include "qb/suite.hpp"

using namespace qb;

namespace {

int exit_code_for(const SuiteReport& rep) { return rep.ok() ? 0 : 1; }

std::shared_ptr<Example> load_example(const std::string& name, const std::string& kappa) {
  return build_example(name, Scalar::parse(kappa));
}

Element parse_in_forms(const Example& ex, const std::string& text) {
  return parse_element(ex.bundle->forms(), text);
}

int cmd_list() {
  std::cout << "examples:\n";
  for (const auto& n : example_names()) std::cout << "  " << n << "\n";
  std::cout << "suites:\n  all\n";
  for (const auto& n : suite_names()) std::cout << "  " << n << "\n";
  std::cout << "quantities: qtrs nabla hat-nabla curvature herm defect potential "
               "field-strength\n";
  return 0;
}

int cmd_verify(const std::string& example, const std::string& suite, int budget, int jobs,
               const std::string& format, const std::string& kappa) {
  auto ex = load_example(example, kappa);
  SuiteReport rep = run_suite(ex, suite, budget, jobs);
  if (format == "json")
    std::cout << rep.to_json() << "\n";
  else
    std::cout << rep.to_text();
  return exit_code_for(rep);
}

int cmd_compute(const std::string& example, const std::string& quantity,
                const std::string& arg, const std::string& rep_name,
                const std::string& section, const std::string& section2,
                const std::string& conn_name, const std::string& kappa,
                const std::string& side) {
  auto ex = load_example(example, kappa);
  auto section_of = [&](const std::string& text) {
    if (text.empty()) fail(Errc::UnknownQuantity, "this quantity needs --section");
    if (rep_name.empty()) fail(Errc::UnknownQuantity, "this quantity needs --rep");
    Section T{ex->bundle.get(), rep_name, {parse_in_forms(*ex, text)}};
    if (ex->bundle->rep(rep_name).n() != 1)
      fail(Errc::UnknownQuantity, "CLI sections are limited to one-dimensional fibres");
    if (!T.check()) fail(Errc::NotIntertwiner, "the section expression is not equivariant");
    return T;
  };
  const Connection& omega = ex->connection(conn_name);
  if (quantity == "qtrs") {
    if (arg.empty()) fail(Errc::UnknownQuantity, "qtrs needs --arg <element of the group>");
    Element g = parse_element(ex->bundle->gamma()->alg(), arg);
    BalTensor t = qtrs(*ex->bundle, omega, g);
    std::cout << t.str() << "\n";
    return 0;
  }
  if (quantity == "curvature") {
    for (int i = 0; i < ex->cal->dim(); ++i) {
      InvForm e = ex->cal->zero_form();
      e[static_cast<size_t>(i)] = Scalar::one();
      std::cout << "R(" << ex->cal->theta_display(i) << ") = " << omega.curvature(e).str()
                << "\n";
    }
    return 0;
  }
  if (quantity == "nabla") {
    std::cout << nabla(omega, section_of(section)).str() << "\n";
    return 0;
  }
  if (quantity == "hat-nabla") {
    std::cout << hat_nabla(omega, section_of(section)).str() << "\n";
    return 0;
  }
  if (quantity == "herm") {
    Section T1 = section_of(section);
    Section T2 = section2.empty() ? T1 : section_of(section2);
    if (side == "right")
      std::cout << herm_R(T1, T2).str() << "\n";
    else
      std::cout << herm_L(T1, T2).str() << "\n";
    return 0;
  }
  if (quantity == "defect") {
    Section T1 = section_of(section);
    Section T2 = section2.empty() ? T1 : section_of(section2);
    Element d = compat_defect(omega, T1, T2, side == "right" ? Side::Right : Side::Left);
    std::cout << d.str() << "\n";
    return 0;
  }
  if (quantity == "potential" || quantity == "field-strength") {
    auto A = potential_decompose(*ex, omega);
    if (quantity == "field-strength") A = field_strength(*ex, A);
    for (int i = 0; i < ex->cal->dim(); ++i)
      std::cout << (quantity == "potential" ? "A(" : "F(") << ex->cal->theta_display(i)
                << ") = " << A[static_cast<size_t>(i)].str() << "\n";
    return 0;
  }
  fail(Errc::UnknownQuantity, "unknown quantity " + quantity);
}

int cmd_check_presentation(const std::string& path, const std::string& format) {
  ParsedPresentation pp = parse_presentation_file(path);
  SuiteReport rep;
  rep.engine_version = kEngineVersion;
  rep.example = path;
  rep.suite = "presentation";
  auto record = [&](const std::string& id, const std::string& ref, CheckResult r) {
    rep.checks.push_back({id, ref, "presentation", std::move(r)});
  };
  auto conf = pp.algebra->check_local_confluence(6);
  record("local-confluence", "critical pairs resolve up to length 6",
         conf.confluent()
             ? CheckResult{}
             : CheckResult{"fail",
                           "unresolved overlap at " +
                               pp.algebra->word_str(conf.failures[0].superword),
                           -1});
  if (!pp.d_gen.empty()) {
    bool ok = true;
    std::string witness;
    for (int g = 0; g < pp.algebra->num_generators() && ok; ++g) {
      Element dd = graded_derivative(pp.d_gen, pp.d_gen[static_cast<size_t>(g)]);
      if (!dd.is_zero()) {
        ok = false;
        witness = "d^2 != 0 at " + pp.algebra->gen(g).name;
      }
    }
    record("differential-squares-to-zero", "d composed with itself vanishes",
           ok ? CheckResult{} : CheckResult{"fail", witness, -1});
  }
  if (pp.hopf) {
    auto h = pp.hopf->check_axioms(15);
    record("hopf-axioms", "coproduct, counit and antipode axioms",
           h.ok() ? CheckResult{} : CheckResult{"fail", h.failures[0], -1});
    for (const auto& decl : pp.coreps) {
      Corep c(pp.hopf.get(), decl.name, decl.matrix);
      auto cr = c.check();
      record("corep-" + decl.name, "comatrix and unitarity identities",
             cr.ok() ? CheckResult{} : CheckResult{"fail", cr.failures[0], -1});
    }
    if (pp.has_fodc) {
      auto cal = std::make_shared<Calculus>(pp.hopf, pp.ideal, pp.theta_names, pp.theta_names,
                                            pp.preimages);
      Envelope env(cal);
      auto cr = cal->check(env, 10);
      record("fodc-axioms", "germs map, module structure and envelope identities",
             cr.ok() ? CheckResult{} : CheckResult{"fail", cr.failures[0], -1});
    }
  }
  if (format == "json")
    std::cout << rep.to_json() << "\n";
  else
    std::cout << rep.to_text();
  return rep.ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact symbolic toolkit for quantum principal bundles"};
  app.require_subcommand(1);

  auto* list = app.add_subcommand("list", "list examples, suites and quantities");

  std::string example = "trivial-u1", suite = "all", format = "text", kappa = "q";
  int budget = 4, jobs = 1;
  auto* verify = app.add_subcommand("verify", "run identity suites on an example");
  verify->add_option("example", example)->required();
  verify->add_option("--suite", suite);
  verify->add_option("--budget", budget);
  verify->add_option("--jobs", jobs);
  verify->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));
  verify->add_option("--kappa", kappa);

  std::string quantity, arg, rep_name, section, section2, conn = "", side = "left";
  auto* compute = app.add_subcommand("compute", "print a named quantity in canonical form");
  compute->add_option("quantity", quantity)->required();
  compute->add_option("--example", example)->required();
  compute->add_option("--arg", arg);
  compute->add_option("--rep", rep_name);
  compute->add_option("--section", section);
  compute->add_option("--section2", section2);
  compute->add_option("--connection", conn);
  compute->add_option("--side", side)->check(CLI::IsMember({"left", "right"}));
  compute->add_option("--kappa", kappa);

  std::string path;
  auto* checkp = app.add_subcommand("check-presentation", "validate a presentation file");
  checkp->add_option("file", path)->required();
  checkp->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

  CLI11_PARSE(app, argc, argv);

  try {
    if (list->parsed()) return cmd_list();
    if (verify->parsed()) return cmd_verify(example, suite, budget, jobs, format, kappa);
    if (compute->parsed()) {
      std::string cn = conn;
      if (cn.empty()) cn = (example == "hopf-fibration" || example == "dunkl-rank1") ? "c" : "triv";
      return cmd_compute(example, quantity, arg, rep_name, section, section2, cn, kappa, side);
    }
    if (checkp->parsed()) return cmd_check_presentation(path, format);
  } catch (const Error& e) {
    std::cerr << "error (" << errc_name(e.code()) << "): " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
