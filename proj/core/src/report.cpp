#include <hiso/report.hpp>

#include <hiso/degeneracy.hpp>
#include <hiso/errors.hpp>
#include <hiso/sampling.hpp>
#include <hiso/sections.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <functional>
#include <limits>
#include <sstream>
#include <thread>
#include <vector>

namespace hiso {

namespace {

std::string iso_timestamp() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

// Run independent certificate tasks on a bounded pool, results in input order.
std::vector<Certificate> run_parallel(std::vector<std::function<Certificate()>> tasks) {
    std::vector<Certificate> results(tasks.size());
    const int workers =
        std::max(1, std::min<int>(thread_cap(), static_cast<int>(tasks.size())));
    if (workers == 1) {
        for (std::size_t i = 0; i < tasks.size(); ++i) results[i] = tasks[i]();
        return results;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(tasks.size());
    for (int wkr = 0; wkr < workers; ++wkr) {
        pool.emplace_back([&] {
            while (true) {
                const std::size_t i = next.fetch_add(1);
                if (i >= tasks.size()) return;
                try {
                    results[i] = tasks[i]();
                } catch (...) {
                    errors[i] = std::current_exception();
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
    return results;
}

// Aggregate section-preservation over coordinate subspaces and random
// (V, v) pairs, plus the transfer injectivity separation.
Certificate sections_suite(const IsometryMap& f, int samples, std::uint64_t seed,
                           const Tolerances& tol) {
    Certificate cert;
    cert.check = "sections_suite";
    cert.add_tolerance("eps_fun", tol.eps_fun);
    cert.add_tolerance("reverse_eps", tol.reverse_eps);
    const int n = f.source_dim();
    SampleStream stream(seed, "sections_suite");
    double forward = 0.0, reverse = 0.0, offsets = 0.0;
    int cases = 0;

    auto absorb = [&](const Certificate& c) {
        ++cases;
        if (c.failed()) cert.status = CertStatus::Fail;
        for (const auto& [key, value] : c.metrics) {
            if (key == "forward_residual") forward = std::max(forward, value);
            if (key == "reverse_residual") reverse = std::max(reverse, value);
            if (key == "offset_residual") offsets = std::max(offsets, value);
        }
    };

    // Coordinate subspaces: every proper subset of the coordinate axes.
    for (int mask = 1; mask < (1 << n) - 1; ++mask) {
        MatrixXcd basis(n, 0);
        for (int j = 0; j < n; ++j) {
            if (!(mask & (1 << j))) continue;
            basis.conservativeResize(n, basis.cols() + 1);
            basis.col(basis.cols() - 1) = VectorXcd::Zero(n);
            basis(j, basis.cols() - 1) = Complex{1.0, 0.0};
        }
        const LinearSubspace v = LinearSubspace::from_span(basis, tol.tau_rank);
        absorb(section_preservation_check(f, v, VectorXcd::Zero(n), samples, seed, tol));
        absorb(section_preservation_check(f, v, stream.ball_point(n, 0.4), samples, seed, tol));
    }

    // Random (V, v) pairs.
    for (int t = 0; t < 10; ++t) {
        const int m = 1 + static_cast<int>(stream.next_u64() % static_cast<std::uint64_t>(n - 1));
        MatrixXcd basis(n, m);
        for (int c = 0; c < m; ++c) basis.col(c) = stream.gaussian_vector(n);
        const LinearSubspace v = LinearSubspace::from_span(basis, tol.tau_rank);
        absorb(section_preservation_check(f, v, stream.ball_point(n, 0.4), samples,
                                          seed + static_cast<std::uint64_t>(t) + 1, tol));
    }

    // Injectivity separation of the Grassmannian transfer on random pairs.
    double min_separation = std::numeric_limits<double>::infinity();
    for (int t = 0; t < 100; ++t) {
        const int m = 1 + static_cast<int>(stream.next_u64() % static_cast<std::uint64_t>(n - 1));
        MatrixXcd b1(n, m), b2(n, m);
        for (int c = 0; c < m; ++c) {
            b1.col(c) = stream.gaussian_vector(n);
            b2.col(c) = stream.gaussian_vector(n);
        }
        const LinearSubspace v1 = LinearSubspace::from_span(b1, tol.tau_rank);
        const LinearSubspace v2 = LinearSubspace::from_span(b2, tol.tau_rank);
        if (v1.gap_angle(v2) <= tol.angle_tol) continue; // drew the same subspace
        const double sep =
            transfer(f, v1, tol).subspace.gap_angle(transfer(f, v2, tol).subspace);
        min_separation = std::min(min_separation, sep);
        if (sep <= tol.angle_tol) cert.status = CertStatus::Fail;
    }

    cert.add_metric("cases", cases);
    cert.add_metric("forward_residual", forward);
    cert.add_metric("reverse_residual", reverse);
    cert.add_metric("offset_residual", offsets);
    cert.add_metric("min_injectivity_separation", min_separation);
    cert.max_residual = std::max({forward, offsets});
    return cert;
}

} // namespace

int thread_cap() {
    if (const char* env = std::getenv("BSD_ISO_THREADS")) {
        const int v = std::atoi(env);
        if (v >= 1) return v;
        return 1;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

Json build_report(const IsometryMap& f, const ReportOptions& opt) {
    f.validate(opt.tol);
    const Tolerances& tol = opt.tol;

    std::vector<std::function<Certificate()>> tasks;
    tasks.emplace_back([&] { return verify_functional_equation(f, opt.order, tol); });
    tasks.emplace_back(
        [&] { return verify_functional_equation_pointwise(f, opt.samples, opt.seed, tol); });
    tasks.emplace_back([&] { return verify_jacobian_identity(f, tol); });
    tasks.emplace_back([&] { return verify_linear_functional(f, opt.samples, opt.seed, tol); });
    tasks.emplace_back([&] { return verify_projection_identity(f, opt.samples, opt.seed, tol); });
    tasks.emplace_back([&] {
        const Fibration fib(f, tol);
        return retraction_suite(fib, opt.samples, opt.seed, tol);
    });
    tasks.emplace_back([&] {
        const Fibration fib(f, tol);
        return balanced_convex_check(fib, opt.samples, opt.seed, tol);
    });
    tasks.emplace_back([&] {
        const Fibration fib(f, tol);
        return splitting_suite(fib, std::min(opt.samples, 100), opt.seed, tol);
    });
    if (f.source_dim() >= 2)
        tasks.emplace_back(
            [&] { return sections_suite(f, std::max(opt.samples / 10, 25), opt.seed, tol); });
    tasks.emplace_back([&] { return linear_degeneracy(f, opt.k_max, tol); });
    tasks.emplace_back([&] { return sufficient_nondegeneracy(f, opt.k_max, tol); });

    const std::vector<Certificate> certs = run_parallel(std::move(tasks));

    Json report;
    Json map_summary;
    map_summary["source"] = f.source.to_string();
    map_summary["target"] = f.target.to_string();
    map_summary["k"] = f.k;
    map_summary["order"] = f.order();
    if (!f.closed_form.empty()) map_summary["closed_form"] = f.closed_form;
    report["map"] = std::move(map_summary);
    Json options;
    options["samples"] = opt.samples;
    options["seed"] = opt.seed;
    options["order"] = opt.order;
    options["k_max"] = opt.k_max;
    report["options"] = std::move(options);
    if (!opt.deterministic) report["timestamp"] = iso_timestamp();

    bool failed = false;
    Json list = Json::array();
    for (const auto& c : certs) {
        failed = failed || c.failed();
        list.push_back(certificate_to_json(c));
    }
    report["certificates"] = std::move(list);
    report["status"] = failed ? "fail" : "pass";
    return report;
}

bool report_has_failure(const Json& report) {
    return report.at("status").get<std::string>() == "fail";
}

std::string render_report(const Json& report, const std::string& format) {
    if (format == "json") return dump_json(report);
    if (format == "csv") {
        std::ostringstream out;
        out << "check,status,max_residual\n";
        for (const auto& c : report.at("certificates"))
            out << c.at("check").get<std::string>() << ','
                << c.at("status").get<std::string>() << ','
                << c.at("max_residual").get<double>() << '\n';
        return out.str();
    }
    if (format == "human") {
        std::ostringstream out;
        out << "map " << report.at("map").at("source").get<std::string>() << " -> "
            << report.at("map").at("target").get<std::string>() << "\n";
        for (const auto& c : report.at("certificates")) {
            out << "  " << c.at("check").get<std::string>() << ": "
                << c.at("status").get<std::string>()
                << " (max residual " << c.at("max_residual").get<double>() << ")\n";
        }
        out << "overall: " << report.at("status").get<std::string>() << "\n";
        return out.str();
    }
    throw io_error("unknown report format: " + format);
}

} // namespace hiso
