// Command-line laboratory for the quasi-periodic renormalization operator:
// fixed points, spectra, sweeps, attractor runs, and the slope pipelines of
// the forced logistic family. Every run writes CSV artifacts plus a
// manifest sufficient to reproduce it.

#include <CLI11.hpp>
#include <chrono>
#include <cstdio>
#include <json.hpp>

#include "qprenorm/qprenorm.hpp"

using namespace qpr;
using json = nlohmann::json;

namespace {

struct RunContext {
    std::filesystem::path outdir;
    ExperimentConfig config;
    std::vector<std::filesystem::path> outputs;
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();

    explicit RunContext(std::string dir, std::string command) : outdir(std::move(dir)) {
        config.set("command", command);
    }

    void emit(const std::string& name, const std::string& content) {
        const auto path = outdir / name;
        write_text_file(path, content);
        outputs.push_back(path);
        std::printf("wrote %s\n", path.string().c_str());
    }

    void finalize() {
        write_text_file(outdir / "config.txt", config.serialize());
        json manifest;
        manifest["version"] = qpr::version;
        manifest["command"] = config.get("command");
        manifest["config"] = json::object();
        for (const auto& [k, v] : config.entries()) manifest["config"][k] = v;
        manifest["wall_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(
                                  std::chrono::steady_clock::now() - t0)
                                  .count();
        manifest["outputs"] = json::array();
        for (const auto& p : outputs) {
            json f;
            f["file"] = p.filename().string();
            char buf[32];
            std::snprintf(buf, sizeof(buf), "%016llx",
                          static_cast<unsigned long long>(fnv1a64(read_text_file(p))));
            f["fnv1a64"] = buf;
            manifest["outputs"].push_back(f);
        }
        write_text_file(outdir / "manifest.json", manifest.dump(2) + "\n");
    }
};

double parse_omega(const std::string& text) {
    if (text == "golden") return RotationNumber::golden().value;
    return RotationNumber::reduce(std::stod(text));
}

std::string csv_of_spectrum(const SpectrumRecord& rec) {
    std::string out = "# columns: index, re, im, modulus, residual\n";
    for (size_t i = 0; i < rec.eigenvalues.size(); ++i) {
        const auto lam = rec.eigenvalues[i];
        out += std::to_string(i + 1) + "," + format_g17(lam.real()) + "," +
               format_g17(lam.imag()) + "," + format_g17(std::abs(lam)) + "," +
               format_g17(rec.residuals[i]) + "\n";
    }
    return out;
}

UnimodalMap solve_phi(int order) {
    return newton_fixed_point(UnimodalMap::newton_seed(DiscDomain::standard(), order));
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"quasi-periodic renormalization laboratory"};
    app.require_subcommand(1);

    std::string outdir = "out";
    app.add_option("--outdir", outdir, "output directory")->capture_default_str();

    // --- fixed-point ---------------------------------------------------
    auto* sc_fp = app.add_subcommand("fixed-point", "Newton solve of the doubling fixed point");
    int fp_order = 100;
    std::string fp_out = "phi.csv";
    sc_fp->add_option("--order", fp_order, "truncation order N")->capture_default_str();
    sc_fp->add_option("--out", fp_out, "output file name")->capture_default_str();

    // --- check-h0 -------------------------------------------------------
    auto* sc_h0 = app.add_subcommand("check-h0", "boundary verification of the domain hypothesis");
    int h0_samples = 4096, h0_order = 100;
    sc_h0->add_option("--samples", h0_samples)->capture_default_str();
    sc_h0->add_option("--order", h0_order)->capture_default_str();

    // --- feig-spectrum ---------------------------------------------------
    auto* sc_feig = app.add_subcommand("feig-spectrum", "spectrum of the 1-D derivative at the fixed point");
    int feig_order = 80;
    sc_feig->add_option("--order", feig_order)->capture_default_str();

    // --- spectrum ---------------------------------------------------------
    auto* sc_spec = app.add_subcommand("spectrum", "pair-operator spectrum at one rotation number");
    std::string spec_omega = "golden";
    int spec_order = 100, spec_top = 24;
    bool spec_dump = false;
    sc_spec->add_option("--omega", spec_omega)->capture_default_str();
    sc_spec->add_option("--order", spec_order)->capture_default_str();
    sc_spec->add_option("--top", spec_top)->capture_default_str();
    sc_spec->add_flag("--dump-operator", spec_dump, "also write the dense L1/L2/L_omega matrices");

    // --- sweep -------------------------------------------------------------
    auto* sc_sweep = app.add_subcommand("sweep", "pair-operator spectrum over an omega grid");
    int sweep_grid = 1280, sweep_order = 100, sweep_top = 24;
    sc_sweep->add_option("--grid", sweep_grid)->capture_default_str();
    sc_sweep->add_option("--order", sweep_order)->capture_default_str();
    sc_sweep->add_option("--top", sweep_top)->capture_default_str();

    // --- sweep-section -------------------------------------------------------
    auto* sc_sws = app.add_subcommand("sweep-section", "section-map Jacobian spectrum over an omega grid");
    int sws_grid = 256, sws_order = 60, sws_top = 8;
    sc_sws->add_option("--grid", sws_grid)->capture_default_str();
    sc_sws->add_option("--order", sws_order)->capture_default_str();
    sc_sws->add_option("--top", sws_top)->capture_default_str();

    // --- validate ----------------------------------------------------------
    auto* sc_val = app.add_subcommand("validate", "eigenvector distances across orders and radii");
    std::string val_omega = "golden";
    int val_lo = 40, val_hi = 100, val_step = 10, val_ref = 110, val_top = 24, val_radius_order = 90;
    sc_val->add_option("--omega", val_omega)->capture_default_str();
    sc_val->add_option("--from", val_lo)->capture_default_str();
    sc_val->add_option("--to", val_hi)->capture_default_str();
    sc_val->add_option("--step", val_step)->capture_default_str();
    sc_val->add_option("--ref-order", val_ref)->capture_default_str();
    sc_val->add_option("--top", val_top)->capture_default_str();
    sc_val->add_option("--radius-order", val_radius_order)->capture_default_str();

    // --- attractor -----------------------------------------------------------
    auto* sc_att = app.add_subcommand("attractor", "projectivized skew-product attractor run");
    int att_order = 30;
    long att_transient = 2000, att_record = 80000;
    std::string att_omega = "golden", att_variant = "full";
    int att_seed = 0, att_embed_pair = 0;
    double att_embed_k0 = 2.0;
    sc_att->add_option("--order", att_order)->capture_default_str();
    sc_att->add_option("--transient", att_transient)->capture_default_str();
    sc_att->add_option("--record", att_record)->capture_default_str();
    sc_att->add_option("--omega", att_omega)->capture_default_str();
    sc_att->add_option("--variant", att_variant, "full|section")->capture_default_str();
    sc_att->add_option("--seed", att_seed, "canonical basis seed index")->capture_default_str();
    sc_att->add_option("--embed-k0", att_embed_k0)->capture_default_str();
    sc_att->add_option("--embed-pair", att_embed_pair, "0:(x0,y0) 1:(x2,y2) 2:(x4,y4)")->capture_default_str();

    // --- slopes -----------------------------------------------------------
    auto* sc_slopes = app.add_subcommand("slopes", "reducibility-loss slopes alpha'_n");
    std::string sl_family = "A", sl_omega = "golden", sl_ref;
    int sl_nmax = 11, sl_order = 80;
    double sl_eta = 0.0;
    sc_slopes->add_option("--family", sl_family, "A|B")->capture_default_str();
    sc_slopes->add_option("--omega", sl_omega)->capture_default_str();
    sc_slopes->add_option("--n-max", sl_nmax)->capture_default_str();
    sc_slopes->add_option("--order", sl_order)->capture_default_str();
    sc_slopes->add_option("--eta", sl_eta, "second-mode mixing weight")->capture_default_str();
    sc_slopes->add_option("--ref", sl_ref, "reference CSV (n,value) for discrepancy columns");

    // --- conj-h3 ----------------------------------------------------------
    auto* sc_h3 = app.add_subcommand("conj-h3", "saddle-passage diagnostic table");
    std::string h3_omega = "golden";
    int h3_nmin = 4, h3_nmax = 13, h3_order = 80;
    sc_h3->add_option("--omega", h3_omega)->capture_default_str();
    sc_h3->add_option("--n-min", h3_nmin)->capture_default_str();
    sc_h3->add_option("--n-max", h3_nmax)->capture_default_str();
    sc_h3->add_option("--order", h3_order)->capture_default_str();

    // --- conj-h5 ----------------------------------------------------------
    auto* sc_h5 = app.add_subcommand("conj-h5", "uniform-growth ratio trace");
    std::string h5_omega = "golden";
    int h5_steps = 20000, h5_order = 80;
    sc_h5->add_option("--omega", h5_omega)->capture_default_str();
    sc_h5->add_option("--steps", h5_steps)->capture_default_str();
    sc_h5->add_option("--order", h5_order)->capture_default_str();

    // --- universality -------------------------------------------------------
    auto* sc_uni = app.add_subcommand("universality", "family-independence and doubling diagnostics");
    std::string uni_omega = "golden";
    int uni_nmax = 9, uni_order = 80;
    std::vector<double> uni_etas = {0.1, 0.05, 0.025};
    sc_uni->add_option("--omega", uni_omega)->capture_default_str();
    sc_uni->add_option("--n-max", uni_nmax)->capture_default_str();
    sc_uni->add_option("--order", uni_order)->capture_default_str();
    sc_uni->add_option("--etas", uni_etas)->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2; // config error
    }

    try {
        if (*sc_fp) {
            RunContext ctx(outdir, "fixed-point");
            ctx.config.set("order", fp_order);
            const UnimodalMap phi = solve_phi(fp_order);
            ctx.emit(fp_out, to_csv(phi.psi));
            const double res = sup_norm(renormalize(phi).psi - phi.psi);
            std::string info;
            info += "a=" + format_g17(phi.a()) + "\n";
            info += "residual=" + format_g17(res) + "\n";
            ctx.emit("fixed_point_info.txt", info);
            ctx.finalize();
        } else if (*sc_h0) {
            RunContext ctx(outdir, "check-h0");
            ctx.config.set("samples", h0_samples);
            ctx.config.set("order", h0_order);
            const UnimodalMap phi = solve_phi(h0_order);
            const H0Report rep = check_h0_inclusion(phi, DiscDomain::standard(), h0_samples);
            std::string info;
            info += "margin_scaling=" + format_g17(rep.margin_scaling) + "\n";
            info += "margin_image=" + format_g17(rep.margin_image) + "\n";
            info += "interior_ok=" + std::to_string(rep.interior_ok) + "\n";
            info += "samples=" + std::to_string(rep.samples) + "\n";
            ctx.emit("h0_report.txt", info);
            ctx.finalize();
        } else if (*sc_feig) {
            RunContext ctx(outdir, "feig-spectrum");
            ctx.config.set("order", feig_order);
            const UnimodalMap phi = solve_phi(feig_order);
            const RenormConstants rc = feigenbaum_spectrum(phi);
            std::string info;
            info += "delta=" + format_g17(rc.delta_feig) + "\n";
            info += "a=" + format_g17(rc.a_fixed) + "\n";
            info += "one_over_a=" + format_g17(1.0 / rc.a_fixed) + "\n";
            ctx.emit("feigenbaum.txt", info);
            std::string spec = "# columns: index, re, im, modulus, residual\n";
            for (size_t i = 0; i < std::min<size_t>(24, rc.full_spectrum.values.size()); ++i) {
                const auto lam = rc.full_spectrum.values[i];
                spec += std::to_string(i + 1) + "," + format_g17(lam.real()) + "," +
                        format_g17(lam.imag()) + "," + format_g17(std::abs(lam)) + "," +
                        format_g17(rc.full_spectrum.residuals[i]) + "\n";
            }
            ctx.emit("dr_spectrum.csv", spec);
            ctx.finalize();
        } else if (*sc_spec) {
            RunContext ctx(outdir, "spectrum");
            const double w = parse_omega(spec_omega);
            ctx.config.set("omega", w);
            ctx.config.set("order", spec_order);
            ctx.config.set("top", spec_top);
            const UnimodalMap phi = solve_phi(spec_order);
            const ModeAction act(phi);
            const SpectrumRecord rec = spectrum_of_Lomega(act, RotationNumber(w), spec_top);
            ctx.emit("spectrum.csv", csv_of_spectrum(rec));
            if (spec_dump) {
                ctx.emit("l1.csv", matrix_to_csv(act.L1()));
                ctx.emit("l2.csv", matrix_to_csv(act.L2()));
                ctx.emit("lomega.csv", matrix_to_csv(lomega_matrix(act, RotationNumber(w))));
            }
            ctx.finalize();
        } else if (*sc_sweep) {
            RunContext ctx(outdir, "sweep");
            ctx.config.set("grid", sweep_grid);
            ctx.config.set("order", sweep_order);
            ctx.config.set("top", sweep_top);
            const UnimodalMap phi = solve_phi(sweep_order);
            const ModeAction act(phi);
            const SweepTable table = omega_sweep(act, sweep_grid, sweep_top);
            std::string out = "# columns: omega, index, re, im, modulus, residual\n";
            for (size_t j = 0; j < table.grid.size(); ++j) {
                const auto& rec = table.records[j];
                for (size_t i = 0; i < rec.eigenvalues.size(); ++i) {
                    out += format_g17(table.grid[j]) + "," + std::to_string(i + 1) + "," +
                           format_g17(rec.eigenvalues[i].real()) + "," +
                           format_g17(rec.eigenvalues[i].imag()) + "," +
                           format_g17(std::abs(rec.eigenvalues[i])) + "," +
                           format_g17(rec.residuals[i]) + "\n";
                }
            }
            ctx.emit("sweep.csv", out);
            json man;
            man["grid"] = sweep_grid;
            man["order"] = sweep_order;
            char buf[32];
            std::snprintf(buf, sizeof(buf), "%016llx",
                          static_cast<unsigned long long>(fnv1a64(to_csv(phi.psi))));
            man["base_map_fnv1a64"] = buf;
            ctx.emit("sweep_manifest.json", man.dump(2) + "\n");
            ctx.finalize();
        } else if (*sc_sws) {
            RunContext ctx(outdir, "sweep-section");
            ctx.config.set("grid", sws_grid);
            ctx.config.set("order", sws_order);
            ctx.config.set("top", sws_top);
            const UnimodalMap phi = solve_phi(sws_order);
            const ModeAction act(phi);
            std::vector<std::string> rows(static_cast<size_t>(sws_grid));
            parallel_for(sws_grid, [&](int j) {
                const RotationNumber w(double(j) / double(sws_grid));
                SectionSpectrumOptions so;
                so.top_m = sws_top;
                std::string line;
                try {
                    const SectionSpectrum ss = section_jacobian_spectrum(act, w, so);
                    line = format_g17(w.value);
                    line += "," + std::to_string(ss.iterations) + "," + format_g17(ss.gap);
                    for (const auto& lam : ss.record.eigenvalues)
                        line += "," + format_g17(lam.real()) + "," + format_g17(lam.imag());
                    line += "\n";
                } catch (const PowerIterationDivergence&) {
                    line = format_g17(w.value) + ",-1,nan\n"; // divergence reported as data
                }
                rows[static_cast<size_t>(j)] = line;
            });
            std::string out = "# columns: omega, iterations(-1 = divergence), gap, re_i, im_i ...\n";
            for (const auto& r : rows) out += r;
            ctx.emit("sweep_section.csv", out);
            ctx.finalize();
        } else if (*sc_val) {
            RunContext ctx(outdir, "validate");
            const double w = parse_omega(val_omega);
            ctx.config.set("omega", w);
            ctx.config.set("ref_order", val_ref);
            const RotationNumber omega(w);
            const SpectrumRecord ref =
                spectrum_of_Lomega(ModeAction(solve_phi(val_ref)), omega, val_top);
            std::vector<std::pair<int, SpectrumRecord>> recs;
            for (int N = val_lo; N <= val_hi; N += val_step)
                recs.emplace_back(N, spectrum_of_Lomega(ModeAction(solve_phi(N)), omega, val_top));
            const EigenvectorDistanceTable table =
                validate_eigenvectors(recs, ref, DiscDomain::standard(), val_top);
            std::string out = "# rows: order; columns: distance to reference eigenvector, per eigenvalue\n";
            for (size_t oi = 0; oi < table.orders.size(); ++oi) {
                out += std::to_string(table.orders[oi]);
                for (double d : table.distance[oi]) out += "," + format_g17(d);
                out += "\n";
            }
            ctx.emit("eigenvector_distances.csv", out);

            const SpectrumRecord rrec =
                spectrum_of_Lomega(ModeAction(solve_phi(val_radius_order)), omega, val_top);
            const RadiusTable rt = validate_radius(rrec, DiscDomain::standard());
            std::string rout = "# columns: index, estimated_radius, tail_ok\n";
            for (size_t i = 0; i < rt.radius.size(); ++i)
                rout += std::to_string(i + 1) + "," + format_g17(rt.radius[i]) + "," +
                        std::to_string(rt.tail_ok[i]) + "\n";
            ctx.emit("radii.csv", rout);
            ctx.finalize();
        } else if (*sc_att) {
            RunContext ctx(outdir, "attractor");
            RunConfig cfg;
            cfg.order = att_order;
            cfg.transient = att_transient;
            cfg.record = att_record;
            cfg.omega0 = RotationNumber(parse_omega(att_omega));
            cfg.variant = att_variant == "section" ? AttractorVariant::section : AttractorVariant::full;
            cfg.seed_index = att_seed;
            ctx.config.set("order", cfg.order);
            ctx.config.set("transient", cfg.transient);
            ctx.config.set("record", cfg.record);
            ctx.config.set("omega0", cfg.omega0.value);
            ctx.config.set("variant", att_variant);
            ctx.config.set("seed", att_seed);
            const UnimodalMap phi = solve_phi(att_order);
            const ModeAction act(phi);
            const AttractorRun run = run_attractor(cfg, act);
            std::string out = "# columns: omega, x0, y0, x2, y2, x4, y4\n";
            for (const auto& p : run.points) {
                out += format_g17(p.omega);
                for (double c : p.coords) out += "," + format_g17(c);
                out += "\n";
            }
            ctx.emit("attractor.csv", out);
            // embedding needs K0 beyond the coordinate range to stay injective
            double max_x = 0;
            for (const auto& p : run.points)
                max_x = std::max(max_x, std::abs(p.coords[static_cast<size_t>(2 * att_embed_pair)]));
            const bool overlap = att_embed_k0 <= max_x;
            if (overlap)
                std::fprintf(stderr, "warning [EmbeddingOverlap]: K0 = %g <= max|x| = %g\n",
                             att_embed_k0, max_x);
            std::string emb = "# columns: X, Y, Z\n";
            for (const auto& p : run.points) {
                const auto e = torus_embed(p, att_embed_k0, att_embed_pair);
                emb += format_g17(e[0]) + "," + format_g17(e[1]) + "," + format_g17(e[2]) + "\n";
            }
            ctx.emit("embedding.csv", emb);
            std::string info = "max_defect=" + format_g17(run.max_defect_recorded) + "\n" +
                               "section_gaps=" + std::to_string(run.section_gaps) + "\n" +
                               "embed_overlap=" + std::to_string(overlap) + "\n";
            ctx.emit("attractor_info.txt", info);
            ctx.finalize();
        } else if (*sc_slopes) {
            RunContext ctx(outdir, "slopes");
            FLMFamily fam = sl_family == "B" ? FLMFamily::B() : FLMFamily::A();
            if (sl_eta != 0.0) fam = FLMFamily::eta_mixed(sl_eta);
            const RotationNumber w0(parse_omega(sl_omega));
            ctx.config.set("family", sl_family);
            ctx.config.set("eta", sl_eta);
            ctx.config.set("omega0", w0.value);
            ctx.config.set("n_max", sl_nmax);
            ctx.config.set("order", sl_order);
            PipelineOptions opts;
            opts.order = sl_order;
            CsvTable ref;
            if (!sl_ref.empty()) ref = parse_numeric_csv(read_text_file(sl_ref));
            std::string out =
                "# columns: n, alpha_n, alpha_prime, beta_prime, eps_abs_vs_reference, eps_rel_vs_reference\n";
            for (int n = 1; n <= sl_nmax; ++n) {
                const SlopeRow row = slope_alpha_beta(fam, n, w0, opts);
                double eabs = std::nan(""), erel = std::nan("");
                for (const auto& rrow : ref.rows)
                    if (static_cast<int>(rrow[0]) == n && rrow.size() >= 2) {
                        eabs = std::abs(row.alpha_prime - rrow[1]);
                        erel = eabs / std::abs(rrow[1]);
                    }
                out += std::to_string(n) + "," + format_g17(row.alpha_n) + "," +
                       format_g17(row.alpha_prime) + "," + format_g17(row.beta_prime) + "," +
                       format_g17(eabs) + "," + format_g17(erel) + "\n";
            }
            ctx.emit("slopes.csv", out);
            ctx.finalize();
        } else if (*sc_h3) {
            RunContext ctx(outdir, "conj-h3");
            const RotationNumber w0(parse_omega(h3_omega));
            ctx.config.set("omega0", w0.value);
            ctx.config.set("order", h3_order);
            PipelineOptions opts;
            opts.order = h3_order;
            std::vector<int> ns;
            for (int n = h3_nmin; n <= h3_nmax; ++n) ns.push_back(n);
            const auto rows = conjecture_h3_table(FLMFamily::A(), ns, w0, opts);
            std::string out =
                "# columns: n, v_norm, m_abs, vector_distance, stable_orbit_distance\n";
            for (const auto& r : rows)
                out += std::to_string(r.n) + "," + format_g17(r.v_norm) + "," +
                       format_g17(r.m_abs) + "," + format_g17(r.vector_distance) + "," +
                       format_g17(r.stable_orbit_distance) + "\n";
            ctx.emit("conj_h3.csv", out);
            ctx.finalize();
        } else if (*sc_h5) {
            RunContext ctx(outdir, "conj-h5");
            const RotationNumber w0(parse_omega(h5_omega));
            ctx.config.set("omega0", w0.value);
            ctx.config.set("steps", h5_steps);
            ctx.config.set("order", h5_order);
            const UnimodalMap phi = solve_phi(h5_order);
            const ModeAction act(phi);
            const DiscDomain dom = DiscDomain::standard();
            const PairField seed(TaylorPoly::constant(dom, 1.0, h5_order),
                                 TaylorPoly::constant(dom, 0.0, h5_order));
            const GrowthRatioTrace trace = conjecture_h5_ratios(act, w0, seed, seed, h5_steps);
            std::string out = "# columns: n, log_ratio, ratio\n";
            for (size_t n = 0; n < trace.log_ratio.size(); ++n)
                out += std::to_string(n) + "," + format_g17(trace.log_ratio[n]) + "," +
                       format_g17(std::exp(trace.log_ratio[n])) + "\n";
            ctx.emit("conj_h5.csv", out);
            ctx.finalize();
        } else if (*sc_uni) {
            RunContext ctx(outdir, "universality");
            const RotationNumber w0(parse_omega(uni_omega));
            ctx.config.set("omega0", w0.value);
            ctx.config.set("n_max", uni_nmax);
            ctx.config.set("order", uni_order);
            PipelineOptions opts;
            opts.order = uni_order;
            const UniversalityReport rep =
                universality_compare(FLMFamily::A(), FLMFamily::B(), w0, uni_nmax, opts);
            std::string out =
                "# columns: n, ratio_a, ratio_b, ratio_diff, doubling_ratio, rhs_factor\n";
            for (size_t i = 0; i < rep.n.size(); ++i)
                out += std::to_string(rep.n[i]) + "," + format_g17(rep.ratio_a[i]) + "," +
                       format_g17(rep.ratio_b[i]) + "," + format_g17(rep.ratio_diff[i]) + "," +
                       format_g17(rep.doubling_ratio[i]) + "," + format_g17(rep.rhs_factor[i]) + "\n";
            ctx.emit("universality.csv", out);

            std::string eta_out = "# columns: eta, max_ratio_deviation_vs_eta0\n";
            std::vector<double> base_ratio;
            for (int n = 1; n <= uni_nmax; ++n)
                base_ratio.push_back(
                    slope_alpha_beta(FLMFamily::A(), n, w0, opts).alpha_prime);
            for (double eta : uni_etas) {
                double dev = 0;
                std::vector<double> r;
                for (int n = 1; n <= uni_nmax; ++n)
                    r.push_back(slope_alpha_beta(FLMFamily::eta_mixed(eta), n, w0, opts).alpha_prime);
                for (size_t i = 1; i < r.size(); ++i)
                    dev = std::max(dev, std::abs(r[i] / r[i - 1] - base_ratio[i] / base_ratio[i - 1]));
                eta_out += format_g17(eta) + "," + format_g17(dev) + "\n";
            }
            ctx.emit("eta_mixing.csv", eta_out);
            ctx.finalize();
        }
    } catch (const Error& e) {
        std::fprintf(stderr, "error [%s]: %s\n", e.name().c_str(), e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
