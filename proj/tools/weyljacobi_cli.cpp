// weyljacobi_cli.cpp — command line front end: finite-volume Green
// matrices, Weyl discs, N -> infinity classification, extension
// resolvents, spectral measures and randomized self-checks.
#include "weyljacobi/weyljacobi.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace weyljacobi;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUnconverged = 1;
constexpr int kExitInvalidInput = 2;
constexpr int kExitOracleMismatch = 3;

struct OracleMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<Complex> parse_z_list(const std::string& raw) {
    std::vector<Complex> out;
    std::stringstream ss(raw);
    std::string item;
    while (std::getline(ss, item, ';')) {
        double re = 0.0, im = 0.0;
        char comma = 0;
        std::stringstream is(item);
        if (!(is >> re >> comma >> im) || comma != ',')
            throw InvalidInput("--z expects RE,IM pairs separated by ';'");
        out.push_back({re, im});
    }
    if (out.empty()) throw InvalidInput("--z is empty");
    return out;
}

std::vector<int> parse_schedule(const std::string& raw) {
    std::vector<int> out;
    std::stringstream ss(raw);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stoi(item));
    return out;
}

// --V accepts either inline JSON or a path to a JSON file.
CMatrix parse_matrix_arg(const std::string& raw) {
    Json j = Json::parse(raw, nullptr, /*allow_exceptions=*/false);
    if (j.is_discarded()) {
        std::ifstream in(raw);
        if (!in) throw InvalidInput("--V is neither inline JSON nor a readable file");
        try {
            in >> j;
        } catch (const Json::parse_error& e) {
            throw InvalidInput("--V file is not valid JSON: " + std::string(e.what()));
        }
    }
    return matrix_from_json(j);
}

void flatten_csv(const Json& j, const std::string& prefix, std::ostream& os) {
    if (j.is_object()) {
        for (auto it = j.begin(); it != j.end(); ++it)
            flatten_csv(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(),
                        os);
    } else if (j.is_array()) {
        for (size_t k = 0; k < j.size(); ++k)
            flatten_csv(j[k], prefix + "[" + std::to_string(k) + "]", os);
    } else {
        os << prefix << "," << j.dump() << "\n";
    }
}

void emit(const Json& result, const std::string& out_format) {
    if (out_format == "json") {
        std::cout << result.dump() << "\n";
    } else if (out_format == "csv") {
        flatten_csv(result, "", std::cout);
    } else {
        std::cout << result.dump(2) << "\n";
    }
}

Json convergence_json(const ConvergenceReport& rep) {
    Json steps = Json::array();
    for (const auto& s : rep.steps)
        steps.push_back({{"N", s.volume}, {"norm", s.norm}, {"increment", s.increment}});
    return {{"steps", std::move(steps)},
            {"n_used", rep.n_used},
            {"last_increment", rep.last_increment},
            {"converged", rep.converged}};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Block Jacobi Weyl-disc toolkit"};
    app.require_subcommand(1);

    std::string model_path, z_raw = "0,1", schedule_raw, out_format = "json";
    std::string zeta_raw = "0,1", v_raw;
    int volume = 0;
    double tol = 1e-6;
    unsigned long long seed = 0;

    auto add_common = [&](CLI::App* cmd, bool needs_model) {
        auto* m = cmd->add_option("--model", model_path, "path to a model spec JSON");
        if (needs_model) m->required();
        cmd->add_option("--z", z_raw, "probe energies RE,IM[;RE,IM...]");
        cmd->add_option("--N", volume, "finite volume");
        cmd->add_option("--schedule", schedule_raw, "volume schedule N1,N2,...");
        cmd->add_option("--tol", tol, "convergence tolerance");
        cmd->add_option("--out", out_format, "output format")
            ->check(CLI::IsMember({"json", "csv", "pretty"}));
        cmd->add_option("--seed", seed, "seed for randomized checks");
    };

    CLI::App* cmd_green = app.add_subcommand(
        "green", "finite-volume Green matrix with Dirichlet boundaries");
    add_common(cmd_green, true);
    CLI::App* cmd_disc =
        app.add_subcommand("disc", "Weyl disc center and radius operators");
    add_common(cmd_disc, true);
    CLI::App* cmd_classify = app.add_subcommand(
        "classify", "limit classification and deficiency indices");
    add_common(cmd_classify, true);
    CLI::App* cmd_extension = app.add_subcommand(
        "extension", "Weyl points of a maximal symmetric extension");
    add_common(cmd_extension, true);
    cmd_extension->add_option("--zeta", zeta_raw, "anchor energy RE,IM");
    cmd_extension->add_option("--V", v_raw,
                              "von Neumann parameter: inline JSON or a file path");
    CLI::App* cmd_spectrum = app.add_subcommand(
        "spectrum", "finite-volume matrix spectral measure");
    add_common(cmd_spectrum, true);
    CLI::App* cmd_moebius = app.add_subcommand(
        "moebius-check", "randomized self-check of the Moebius calculus");
    add_common(cmd_moebius, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInvalidInput;
    }

    try {
        Json result;
        if (cmd_green->parsed()) {
            if (volume < 1) throw InvalidInput("green: --N >= 1 required");
            auto model = load_model_file(model_path);
            const int L = model.block_size();
            Json per_z = Json::array();
            for (Complex z : parse_z_list(z_raw)) {
                CMatrix g =
                    green_boundary(model, volume, z, BoundaryCondition::dirichlet(L));
                if (volume <= 64) {
                    CMatrix oracle = green_oracle(model, volume, z,
                                                  BoundaryCondition::dirichlet(L),
                                                  BoundaryCondition::dirichlet(L), 1, 1);
                    if (op_norm(CMatrix(g - oracle)) > 1e-8 * (1.0 + op_norm(oracle)))
                        throw OracleMismatch("green: dense oracle disagrees");
                }
                per_z.push_back({{"z", to_json(z)}, {"G", to_json(g)}});
            }
            result = {{"command", "green"}, {"N", volume}, {"results", per_z}};
        } else if (cmd_disc->parsed()) {
            if (volume < 1) throw InvalidInput("disc: --N >= 1 required");
            auto model = load_model_file(model_path);
            Json per_z = Json::array();
            for (Complex z : parse_z_list(z_raw)) {
                WeylDisc d = disc(model, volume, z);
                per_z.push_back({{"z", to_json(z)},
                                 {"center", to_json(d.center)},
                                 {"radius_plus", to_json(d.radius_plus)},
                                 {"radius_minus", to_json(d.radius_minus)}});
            }
            result = {{"command", "disc"}, {"N", volume}, {"results", per_z}};
        } else if (cmd_classify->parsed()) {
            auto model = load_model_file(model_path);
            std::vector<int> schedule = schedule_raw.empty()
                                            ? std::vector<int>{4, 8, 16, 32, 64, 128,
                                                               256, 512}
                                            : parse_schedule(schedule_raw);
            Json per_z = Json::array();
            bool all_converged = true;
            for (Complex z : parse_z_list(z_raw)) {
                LimitData ld = limit_disc(model, z, schedule, tol);
                all_converged = all_converged && ld.converged;
                per_z.push_back({{"z", to_json(z)},
                                 {"classification", to_string(ld.classification)},
                                 {"n_z", ld.n_z},
                                 {"n_zbar", ld.n_zbar},
                                 {"converged", ld.converged},
                                 {"R", to_json(ld.r_limit)},
                                 {"S", to_json(ld.s_limit)},
                                 {"convergence", convergence_json(ld.report_r)}});
            }
            result = {{"command", "classify"}, {"results", per_z}};
            emit(result, out_format);
            return all_converged ? kExitOk : kExitUnconverged;
        } else if (cmd_extension->parsed()) {
            auto model = load_model_file(model_path);
            std::vector<int> schedule = schedule_raw.empty()
                                            ? std::vector<int>{4, 8, 16, 32, 64}
                                            : parse_schedule(schedule_raw);
            std::vector<Complex> zeta_list = parse_z_list(zeta_raw);
            if (zeta_list.size() != 1)
                throw InvalidInput("extension: --zeta expects a single RE,IM pair");
            const Complex zeta = zeta_list.front();
            CMatrix v = v_raw.empty()
                            ? CMatrix(CMatrix::Zero(model.block_size(),
                                                    model.block_size()))
                            : parse_matrix_arg(v_raw);
            ExtensionSpec ext = make_extension(model, zeta, v, schedule, tol);
            Json per_z = Json::array();
            for (Complex z : parse_z_list(z_raw)) {
                ExtensionWeylPoint pt =
                    extension_weyl_point(model, ext, z, schedule, tol);
                ResolventResidual rr =
                    resolvent_residual(model, z, pt.g, schedule.back());
                if (rr.diverged || rr.residual > 1e-6)
                    throw OracleMismatch("extension: resolvent residual check failed");
                per_z.push_back({{"z", to_json(z)},
                                 {"G", to_json(pt.g)},
                                 {"W", to_json(pt.w)},
                                 {"residual", rr.residual},
                                 {"tail", rr.tail}});
            }
            result = {{"command", "extension"},
                      {"zeta", to_json(zeta)},
                      {"self_adjoint", ext.self_adjoint},
                      {"results", per_z}};
        } else if (cmd_spectrum->parsed()) {
            if (volume < 1) throw InvalidInput("spectrum: --N >= 1 required");
            auto model = load_model_file(model_path);
            const int L = model.block_size();
            auto bc = BoundaryCondition::dirichlet(L);
            SpectralMeasure mu = spectral_measure(model, volume, bc);
            for (Complex z : parse_z_list(z_raw)) {
                CMatrix g = green_boundary(model, volume, z, bc);
                if (op_norm(CMatrix(g - mu.herglotz_sum(z))) >
                    1e-8 * (1.0 + op_norm(g)))
                    throw OracleMismatch("spectrum: reconstruction disagrees");
            }
            Json atoms = Json::array();
            for (const auto& atom : mu.atoms)
                atoms.push_back(
                    {{"energy", atom.energy}, {"weight", to_json(atom.weight)}});
            result = {{"command", "spectrum"}, {"N", volume}, {"atoms", atoms}};
        } else if (cmd_moebius->parsed()) {
            std::mt19937_64 rng(seed);
            std::uniform_real_distribution<double> u(-1.0, 1.0);
            auto rnd = [&](int rows, int cols) {
                CMatrix m(rows, cols);
                for (int r = 0; r < rows; ++r)
                    for (int c = 0; c < cols; ++c) m(r, c) = Complex(u(rng), u(rng));
                return m;
            };
            // singular values clamped away from zero: keeps every identity
            // far from conditioning cliffs
            auto rnd_invertible = [&](int n) {
                Eigen::JacobiSVD<CMatrix> svd(
                    rnd(n, n), Eigen::ComputeFullU | Eigen::ComputeFullV);
                Eigen::VectorXd sv = svd.singularValues();
                for (int k = 0; k < n; ++k) sv(k) = std::max(sv(k), 0.5);
                return CMatrix(svd.matrixU() * sv.asDiagonal() *
                               svd.matrixV().adjoint());
            };
            int done = 0, attempts = 0;
            double worst = 0.0;
            while (done < 200 && attempts < 4000) {
                ++attempts;
                int L = 1 + static_cast<int>(rng() % 3);
                MoebiusMap s(rnd_invertible(2 * L)), t(rnd_invertible(2 * L));
                CMatrix z = rnd(L, L);
                if (!is_invertible(CMatrix(t.c() * z + t.d()), 1e-4)) continue;
                auto tz = try_moebius(t, z);
                if (!tz) continue;
                if (!is_invertible(CMatrix(s.c() * *tz + s.d()), 1e-4)) continue;
                auto stz = try_moebius(s, *tz);
                MoebiusMap st(CMatrix(s.matrix * t.matrix));
                if (!is_invertible(CMatrix(st.c() * z + st.d()), 1e-4)) continue;
                auto direct = try_moebius(st, z);
                if (!stz || !direct) continue;
                double err1 = op_norm(CMatrix(*direct - *stz)) /
                              (1.0 + op_norm(*direct));
                if (!is_invertible(CMatrix(*tz * t.c() - t.a()), 1e-4)) continue;
                auto back = try_inverse_moebius(*tz, t);
                if (!back) continue;
                double err2 = op_norm(CMatrix(*back - z)) / (1.0 + op_norm(z));
                worst = std::max({worst, err1, err2});
                ++done;
            }
            if (done < 200 || worst > 1e-6)
                throw OracleMismatch("moebius-check: law verification failed");
            result = {{"command", "moebius-check"},
                      {"trials", done},
                      {"worst_relative_error", worst},
                      {"seed", seed}};
        }
        emit(result, out_format);
        return kExitOk;
    } catch (const OracleMismatch& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitOracleMismatch;
    } catch (const NotConverged& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUnconverged;
    } catch (const ConditioningError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUnconverged;
    } catch (const InvalidInput& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalidInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalidInput;
    }
}
