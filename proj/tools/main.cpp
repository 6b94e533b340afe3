// Command-line surface for the holomorphic-isometry toolkit: construct
// graph-form isometries into rank-2 domains, verify the defining
// identities, and emit machine-readable certificates.
//
// Exit codes: 0 pass, 2 precondition/hypothesis violation, 3 verification
// failure, 4 I/O or format error.

#include <hiso/construct.hpp>
#include <hiso/degeneracy.hpp>
#include <hiso/errors.hpp>
#include <hiso/fibration.hpp>
#include <hiso/report.hpp>
#include <hiso/sections.hpp>
#include <hiso/serialization.hpp>

#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

namespace {

constexpr int kExitPass = 0;
constexpr int kExitHypothesis = 2;
constexpr int kExitVerification = 3;
constexpr int kExitIo = 4;

struct CommonOptions {
    std::vector<std::string> tolerance_overrides;
    std::string out_path;
    hiso::Tolerances tolerances() const {
        hiso::Tolerances tol;
        for (const auto& kv : tolerance_overrides) {
            const auto eq = kv.find('=');
            if (eq == std::string::npos)
                throw hiso::io_error("--tolerance expects KEY=VAL, got '" + kv + "'");
            const std::string key = kv.substr(0, eq);
            double value = 0.0;
            try {
                value = std::stod(kv.substr(eq + 1));
            } catch (const std::exception&) {
                throw hiso::io_error("--tolerance: bad value in '" + kv + "'");
            }
            if (key == "eps_zero") tol.eps_zero = value;
            else if (key == "eps_fun") tol.eps_fun = value;
            else if (key == "eps_point") tol.eps_point = value;
            else if (key == "eps_lin") tol.eps_lin = value;
            else if (key == "tau_rank") tol.tau_rank = value;
            else if (key == "tau_split") tol.tau_split = value;
            else if (key == "angle_tol") tol.angle_tol = value;
            else if (key == "reverse_eps") tol.reverse_eps = value;
            else if (key == "angle_roundtrip") tol.angle_roundtrip = value;
            else if (key == "r_sample") tol.r_sample = value;
            else throw hiso::io_error("--tolerance: unknown key '" + key + "'");
        }
        return tol;
    }
};

void emit(const hiso::Json& doc, const std::string& out_path) {
    if (out_path.empty())
        std::cout << hiso::dump_json(doc);
    else
        hiso::write_json_file(out_path, doc);
}

// "identity", "phase:theta", or a path to a JSON matrix.
hiso::MatrixXcd parse_unitary(const std::string& text, int dim) {
    if (text == "identity" || text.empty()) return hiso::MatrixXcd::Identity(dim, dim);
    if (text.rfind("phase:", 0) == 0) {
        double theta = 0.0;
        try {
            theta = std::stod(text.substr(6));
        } catch (const std::exception&) {
            throw hiso::io_error("--unitary: bad phase in '" + text + "'");
        }
        if (dim != 1)
            throw hiso::hypothesis_error("--unitary phase:theta needs a 1x1 unitary (N'-N = 1)");
        hiso::MatrixXcd u(1, 1);
        u(0, 0) = std::exp(hiso::Complex{0.0, theta});
        return u;
    }
    return hiso::matrix_from_json(hiso::load_json_file(text));
}

hiso::IsometryMap load_map(const std::string& path) {
    return hiso::map_from_json(hiso::load_json_file(path));
}

hiso::VectorXcd load_point(const std::string& path) {
    const hiso::Json j = hiso::load_json_file(path);
    const hiso::MatrixXcd m = hiso::matrix_from_json(j.is_array() && !j.empty() && j.at(0).is_array()
                                                         ? j
                                                         : hiso::Json::array({j}));
    if (m.rows() == 1) return m.row(0).transpose();
    if (m.cols() == 1) return m.col(0);
    throw hiso::io_error("point file must hold a vector: " + path);
}

int cmd_construct(const std::string& target_spec, const std::string& unitary_text,
                  const std::vector<int>& permutation, int order, const CommonOptions& common) {
    const hiso::DomainSpec target = hiso::DomainSpec::parse(target_spec);
    hiso::GraphConstructionProblem problem;
    problem.target = target;
    problem.unitary = parse_unitary(unitary_text, target.nprime() - target.dim());
    problem.arrangement = permutation;
    problem.order = order;
    const hiso::Tolerances tol = common.tolerances();
    const hiso::GraphConstructionResult result = hiso::solve_graph_isometry(problem, tol);

    hiso::Json doc = hiso::map_to_json(result.map, tol.eps_zero);
    doc["certificate"] = hiso::certificate_to_json(result.certificate);
    doc["u_prime"] = hiso::matrix_to_json(result.u_prime);
    emit(doc, common.out_path);
    return result.certificate.failed() ? kExitVerification : kExitPass;
}

int cmd_verify(const std::string& map_path, int order, int samples, std::uint64_t seed,
               const CommonOptions& common) {
    const hiso::IsometryMap f = load_map(map_path);
    const hiso::Tolerances tol = common.tolerances();
    const int jet_order = order > 0 ? order : std::min(f.order(), tol.default_order);
    std::vector<hiso::Certificate> certs;
    certs.push_back(hiso::verify_functional_equation(f, jet_order, tol));
    certs.push_back(hiso::verify_jacobian_identity(f, tol));
    certs.push_back(hiso::verify_linear_functional(f, samples, seed, tol));
    certs.push_back(hiso::verify_functional_equation_pointwise(f, samples, seed, tol));
    certs.push_back(hiso::verify_projection_identity(f, samples, seed, tol));

    hiso::Json doc;
    doc["map"] = map_path;
    hiso::Json list = hiso::Json::array();
    bool failed = false;
    std::string worst_check;
    double worst_residual = -1.0;
    for (const auto& c : certs) {
        list.push_back(hiso::certificate_to_json(c));
        if (c.failed() && c.max_residual > worst_residual) {
            worst_residual = c.max_residual;
            worst_check = c.check;
        }
        failed = failed || c.failed();
    }
    doc["certificates"] = std::move(list);
    doc["status"] = failed ? "fail" : "pass";
    emit(doc, common.out_path);
    if (failed) {
        std::cerr << "verification failed: " << worst_check << " residual " << worst_residual
                  << "\n";
        return kExitVerification;
    }
    return kExitPass;
}

int cmd_report(const std::string& map_path, hiso::ReportOptions opt, const std::string& format,
               const CommonOptions& common) {
    const hiso::IsometryMap f = load_map(map_path);
    opt.tol = common.tolerances();
    const hiso::Json report = hiso::build_report(f, opt);
    const std::string text = hiso::render_report(report, format);
    if (common.out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(common.out_path);
        if (!out) throw hiso::io_error("cannot write file: " + common.out_path);
        out << text;
    }
    return hiso::report_has_failure(report) ? kExitVerification : kExitPass;
}

int cmd_fibration(const std::string& map_path, const std::string& query_path, bool splitting,
                  int samples, std::uint64_t seed, const CommonOptions& common) {
    const hiso::IsometryMap f = load_map(map_path);
    const hiso::Tolerances tol = common.tolerances();
    const hiso::Fibration fib(f, tol);
    hiso::Json doc;
    bool failed = false;
    if (!query_path.empty()) {
        const hiso::VectorXcd z = load_point(query_path);
        const auto inside = fib.in_df(z);
        doc["in_df"] = inside.inside;
        doc["margin"] = inside.margin;
        if (inside.inside) {
            const hiso::VectorXcd w = fib.project(z);
            doc["projection"] = hiso::matrix_to_json(w.transpose());
            doc["retraction"] = hiso::matrix_to_json(fib.retract(z).transpose());
        }
    }
    if (splitting) {
        const hiso::Certificate c = hiso::splitting_suite(fib, samples, seed, tol);
        doc["splitting"] = hiso::certificate_to_json(c);
        failed = failed || c.failed();
    }
    if (query_path.empty() && !splitting) {
        const hiso::Certificate c = hiso::retraction_suite(fib, samples, seed, tol);
        doc["retraction_suite"] = hiso::certificate_to_json(c);
        failed = failed || c.failed();
    }
    emit(doc, common.out_path);
    return failed ? kExitVerification : kExitPass;
}

int cmd_sections(const std::string& map_path, const std::string& subspace_path,
                 const std::string& offset_path, int samples, std::uint64_t seed,
                 const CommonOptions& common) {
    const hiso::IsometryMap f = load_map(map_path);
    const hiso::Tolerances tol = common.tolerances();
    const hiso::MatrixXcd basis = hiso::matrix_from_json(hiso::load_json_file(subspace_path));
    const hiso::LinearSubspace v = hiso::LinearSubspace::from_span(basis, tol.tau_rank);
    hiso::VectorXcd offset = hiso::VectorXcd::Zero(f.source_dim());
    if (!offset_path.empty()) offset = load_point(offset_path);
    const hiso::Certificate c = hiso::section_preservation_check(f, v, offset, samples, seed, tol);
    emit(hiso::certificate_to_json(c), common.out_path);
    return c.failed() ? kExitVerification : kExitPass;
}

int cmd_degeneracy(const std::string& map_path, bool example_delta2, int max_order, int samples,
                   std::uint64_t seed, const CommonOptions& common) {
    const hiso::Tolerances tol = common.tolerances();
    hiso::Json doc;
    bool failed = false;
    if (example_delta2) {
        const hiso::Certificate c = hiso::example_fiber_probe(samples, seed, tol);
        doc = hiso::certificate_to_json(c);
        failed = c.failed();
    } else {
        const hiso::IsometryMap f = load_map(map_path);
        const hiso::Certificate lin = hiso::linear_degeneracy(f, max_order, tol);
        const hiso::Certificate suff = hiso::sufficient_nondegeneracy(f, max_order, tol);
        doc["linear_degeneracy"] = hiso::certificate_to_json(lin);
        doc["sufficient_nondegeneracy"] = hiso::certificate_to_json(suff);
        failed = lin.failed() || suff.failed();
    }
    emit(doc, common.out_path);
    return failed ? kExitVerification : kExitPass;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"holomorphic isometries between bounded symmetric domains: construction and "
                 "desk-scale verification"};
    app.require_subcommand(1);

    CommonOptions common;
    auto add_common = [&common](CLI::App* sub) {
        sub->add_option("--tolerance", common.tolerance_overrides,
                        "override a named tolerance, KEY=VAL (repeatable)");
        sub->add_option("--out", common.out_path, "write the JSON result to this path");
    };

    // construct
    std::string target_spec, unitary_text = "identity";
    std::vector<int> permutation;
    int order = 8;
    auto* construct = app.add_subcommand("construct", "solve the graph fixed-point system");
    add_common(construct);
    construct->add_option("--target", target_spec, "target domain spec, e.g. typeIV:4")
        ->required();
    construct->add_option("--unitary", unitary_text,
                          "identity | phase:theta | path to a JSON matrix");
    construct->add_option("--permutation", permutation,
                          "column arrangement as a comma-separated permutation of 0..N-1")
        ->delimiter(',');
    construct->add_option("--order", order, "truncation order");

    // verify
    std::string map_path;
    int samples = 1000;
    std::uint64_t seed = 7;
    int verify_order = 0;
    auto* verify = app.add_subcommand("verify", "verify the isometry identities of a map file");
    add_common(verify);
    verify->add_option("--map", map_path, "IsometryMap JSON file")->required();
    verify->add_option("--order", verify_order, "jet verification order (default: map order)");
    verify->add_option("--samples", samples, "pointwise sample count");
    verify->add_option("--seed", seed, "sample seed");

    // report
    hiso::ReportOptions ropt;
    std::string format = "json";
    std::string report_map;
    auto* report = app.add_subcommand("report", "aggregate certificates for a map");
    add_common(report);
    report->add_option("--map", report_map, "IsometryMap JSON file")->required();
    report->add_option("--samples", ropt.samples, "sample count per sub-check");
    report->add_option("--seed", ropt.seed, "sample seed");
    report->add_option("--order", ropt.order, "jet verification order");
    report->add_option("--max-order", ropt.k_max, "degeneracy jet order");
    report->add_option("--format", format, "json | csv | human");
    report->add_flag("--deterministic", ropt.deterministic, "suppress the timestamp field");

    // fibration
    std::string fib_map, query_path;
    bool splitting = false;
    int fib_samples = 100;
    std::uint64_t fib_seed = 7;
    auto* fibration = app.add_subcommand("fibration", "induced submersion queries and checks");
    add_common(fibration);
    fibration->add_option("--map", fib_map, "IsometryMap JSON file")->required();
    fibration->add_option("--query", query_path, "point JSON file: membership/projection/retraction");
    fibration->add_flag("--splitting", splitting, "run the tangent splitting suite");
    fibration->add_option("--samples", fib_samples, "sample count");
    fibration->add_option("--seed", fib_seed, "sample seed");

    // sections
    std::string sec_map, subspace_path, offset_path;
    int sec_samples = 1000;
    std::uint64_t sec_seed = 7;
    auto* sections = app.add_subcommand("sections", "affine-section preservation check");
    add_common(sections);
    sections->add_option("--map", sec_map, "IsometryMap JSON file")->required();
    sections->add_option("--subspace", subspace_path, "JSON spanning matrix of V")->required();
    sections->add_option("--offset", offset_path, "JSON offset vector v");
    sections->add_option("--samples", sec_samples, "sample count");
    sections->add_option("--seed", sec_seed, "sample seed");

    // degeneracy
    std::string deg_map;
    bool example_delta2 = false;
    int max_order = 6;
    int deg_samples = 500;
    std::uint64_t deg_seed = 7;
    auto* degeneracy = app.add_subcommand("degeneracy", "jet-rank degeneracy certificates");
    add_common(degeneracy);
    degeneracy->add_option("--map", deg_map, "IsometryMap JSON file");
    degeneracy->add_flag("--example-delta2", example_delta2,
                         "probe the bidisk diagonal example fibers");
    degeneracy->add_option("--max-order", max_order, "maximal jet order");
    degeneracy->add_option("--samples", deg_samples, "sample count");
    degeneracy->add_option("--seed", deg_seed, "sample seed");

    CLI11_PARSE(app, argc, argv);

    try {
        if (construct->parsed())
            return cmd_construct(target_spec, unitary_text, permutation, order, common);
        if (verify->parsed())
            return cmd_verify(map_path, verify_order, samples, seed, common);
        if (report->parsed()) return cmd_report(report_map, ropt, format, common);
        if (fibration->parsed())
            return cmd_fibration(fib_map, query_path, splitting, fib_samples, fib_seed, common);
        if (sections->parsed())
            return cmd_sections(sec_map, subspace_path, offset_path, sec_samples, sec_seed, common);
        if (degeneracy->parsed()) {
            if (!example_delta2 && deg_map.empty()) {
                std::cerr << "degeneracy: need --map or --example-delta2\n";
                return kExitIo;
            }
            return cmd_degeneracy(deg_map, example_delta2, max_order, deg_samples, deg_seed,
                                  common);
        }
    } catch (const hiso::io_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const hiso::error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitHypothesis;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitIo;
    }
    return kExitIo;
}
