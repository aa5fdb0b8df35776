#include <cstdlib>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "commands.hpp"
#include "relph/errors.hpp"

namespace {

/// RELPH_SEED overrides any --seed for CI determinism.
void apply_seed_env(std::uint64_t& seed) {
    const char* env = std::getenv("RELPH_SEED");
    if (!env) return;
    try {
        seed = std::stoull(env);
    } catch (const std::exception&) {
        throw relph::InvalidInputError("RELPH_SEED is not an unsigned integer");
    }
}

}  // namespace

int main(int argc, char** argv) {
    using namespace relph::cli;
    CLI::App app{"relational persistent homology toolkit"};
    app.require_subcommand(1);

    GenerateOptions gen;
    auto* cmd_gen = app.add_subcommand("generate", "synthesize labeled point clouds");
    cmd_gen->add_option("--out", gen.out_dir, "output directory")->required();
    cmd_gen->add_flag("--grid", gen.grid, "full 9x9 knob grid");
    cmd_gen->add_option("--reps", gen.reps, "realizations per grid cell");
    cmd_gen->add_option("--relabel", gen.relabel, "relabel fraction for N/M1/M2");
    cmd_gen->add_option("--regime", gen.regime,
                        "elimination | equilibrium | escape (single-cloud mode)");
    cmd_gen->add_option("--chi", gen.chi, "chemotaxis knob (single-cloud mode)");
    cmd_gen->add_option("--c-half", gen.c_half, "extravasation knob (single-cloud mode)");
    cmd_gen->add_option("--domain", gen.domain, "square domain side");
    cmd_gen->add_option("--seed", gen.seed, "master seed");
    cmd_gen->add_option("--vessels", gen.vessels, "vessel count override");
    cmd_gen->add_option("--tumor", gen.tumor, "tumor count override");
    cmd_gen->add_option("--necrotic", gen.necrotic, "necrotic count override");
    cmd_gen->add_option("--macrophages", gen.macrophages, "macrophage count override");

    DiagramsOptions dia;
    auto* cmd_dia = app.add_subcommand("diagrams", "persistence diagrams per cloud");
    cmd_dia->add_option("--in", dia.input, "cloud CSV file or directory")->required();
    cmd_dia->add_option("--out", dia.out_dir, "output directory")->required();
    cmd_dia->add_option("--family", dia.family, "vr | dowker | witness")->required();
    cmd_dia->add_option("--species", dia.species, "species for --family vr");
    cmd_dia->add_option("--pair", dia.pair, "two species for --family dowker")
        ->expected(2);
    cmd_dia->add_option("--version", dia.version, "witness version (1 or 2)");
    cmd_dia->add_option("--vr-max", dia.vr_max, "VR truncation value");
    cmd_dia->add_flag("--drop-zero", dia.drop_zero, "drop zero-persistence pairs");
    cmd_dia->add_flag("--svg", dia.svg, "emit diagram plots");
    cmd_dia->add_flag("--dump-complex", dia.dump_complex, "emit filtered complex JSON");
    cmd_dia->add_option("--jobs", dia.jobs, "worker count");
    cmd_dia->add_flag("--keep-going,!--fail-fast", dia.keep_going,
                      "record per-file errors and continue (default)");

    FeaturesOptions fea;
    auto* cmd_fea = app.add_subcommand("features", "feature matrix CSV from clouds");
    cmd_fea->add_option("--in", fea.input, "cloud CSV directory")->required();
    cmd_fea->add_option("--out", fea.out_file, "output CSV path")->required();
    cmd_fea->add_option("--kind", fea.kind, "dowker | vr | witness | simple")->required();
    cmd_fea->add_option("--version", fea.version, "witness version (1 or 2)");
    cmd_fea->add_option("--vr-max", fea.vr_max, "VR truncation value");
    cmd_fea->add_option("--image-rows", fea.image_rows, "persistence image rows");
    cmd_fea->add_option("--image-cols", fea.image_cols, "persistence image cols");
    cmd_fea->add_option("--sigma", fea.sigma, "persistence image Gaussian sigma");
    cmd_fea->add_flag("--label-omega", fea.label_omega,
                      "append the phenotype-majority label column");
    cmd_fea->add_option("--jobs", fea.jobs, "worker count");
    cmd_fea->add_flag("--keep-going,!--fail-fast", fea.keep_going,
                      "record per-file errors and continue (default)");

    DistOptions dst;
    auto* cmd_dst = app.add_subcommand("dist", "distance between two diagram JSONs");
    cmd_dst->add_option("--metric", dst.metric, "bottleneck | wasserstein");
    cmd_dst->add_option("--q", dst.q, "Wasserstein exponent");
    cmd_dst->add_option("a", dst.file_a, "first diagram JSON")->required();
    cmd_dst->add_option("b", dst.file_b, "second diagram JSON")->required();

    ClassifyOptions cls;
    auto* cmd_cls = app.add_subcommand("classify", "SVM pipeline on a labeled feature CSV");
    cmd_cls->add_option("--features", cls.features_file, "feature CSV with label column")
        ->required();
    cmd_cls->add_option("--out", cls.out_file, "results JSON path")->required();
    cmd_cls->add_option("--splits", cls.splits, "train/test splits");
    cmd_cls->add_option("--folds", cls.folds, "CV folds");
    cmd_cls->add_option("--test-fraction", cls.test_fraction, "held-out fraction");
    cmd_cls->add_option("--seed", cls.seed, "base seed");
    cmd_cls->add_option("--svg", cls.svg_file, "accuracy box plot SVG path");

    ClusterOptions clu;
    auto* cmd_clu = app.add_subcommand("cluster", "k-means on a feature CSV");
    cmd_clu->add_option("--features", clu.features_file, "feature CSV")->required();
    cmd_clu->add_option("--manifest", clu.manifest_file, "generation manifest JSON");
    cmd_clu->add_option("--out", clu.out_file, "results JSON path")->required();
    cmd_clu->add_option("--k", clu.k, "cluster count");
    cmd_clu->add_option("--n-init", clu.n_init, "k-means restarts");
    cmd_clu->add_option("--seed", clu.seed, "seed");
    cmd_clu->add_option("--svg-prefix", clu.svg_prefix, "grid map SVG prefix");

    PipelineOptions pip;
    auto* cmd_pip = app.add_subcommand("pipeline", "end-to-end pipelines");
    cmd_pip->add_option("kind", pip.kind, "witness | classify")->required();
    cmd_pip->add_option("--out", pip.out_dir, "output directory")->required();
    cmd_pip->add_option("--reps", pip.reps, "grid realizations per cell (witness)");
    cmd_pip->add_option("--n", pip.corpus_size, "corpus size (classify)");
    cmd_pip->add_option("--relabel", pip.relabel, "relabel fraction (witness)");
    cmd_pip->add_option("--seed", pip.seed, "master seed");
    cmd_pip->add_option("--k", pip.k, "cluster count (witness)");
    cmd_pip->add_option("--splits", pip.splits, "train/test splits (classify)");
    cmd_pip->add_option("--jobs", pip.jobs, "worker count");
    cmd_pip->add_flag("--write-clouds,!--no-clouds", pip.write_clouds,
                      "also write the generated cloud CSVs (default)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? relph::cli::kExitOk : relph::cli::kExitConfig;
    }

    try {
        if (*cmd_gen) {
            apply_seed_env(gen.seed);
            return cmd_generate(gen);
        }
        if (*cmd_dia) return cmd_diagrams(dia);
        if (*cmd_fea) return cmd_features(fea);
        if (*cmd_dst) return cmd_dist(dst);
        if (*cmd_cls) {
            apply_seed_env(cls.seed);
            return cmd_classify(cls);
        }
        if (*cmd_clu) {
            apply_seed_env(clu.seed);
            return cmd_cluster(clu);
        }
        if (*cmd_pip) {
            apply_seed_env(pip.seed);
            return cmd_pipeline(pip);
        }
    } catch (const relph::IoError& e) {
        std::cerr << "relph: fatal: " << e.what() << "\n";
        return relph::cli::kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "relph: error: " << e.what() << "\n";
        return relph::cli::kExitConfig;
    }
    return relph::cli::kExitConfig;
}
