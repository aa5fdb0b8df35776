#include "commands.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <thread>

#include "json.hpp"
#include "relph/datagen.hpp"
#include "relph/diagram_distance.hpp"
#include "relph/errors.hpp"
#include "relph/features.hpp"
#include "relph/io.hpp"
#include "relph/ml.hpp"
#include "relph/random.hpp"
#include "relph/svg.hpp"

namespace relph::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

double now_seconds() {
    return std::chrono::duration<double>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

/// Index-sharded worker pool; per-index errors are collected, not thrown
/// across threads. Results must be written into index-addressed slots so the
/// outcome is independent of scheduling.
std::vector<std::string> parallel_for(std::size_t n, int jobs,
                                      const std::function<void(std::size_t)>& fn) {
    std::vector<std::string> errors(n);
    auto run_one = [&](std::size_t i) {
        try {
            fn(i);
        } catch (const std::exception& e) {
            errors[i] = e.what();
        }
    };
    if (jobs <= 1) {
        for (std::size_t i = 0; i < n; ++i) run_one(i);
        return errors;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t)
        pool.emplace_back([&] {
            while (true) {
                const std::size_t i = next.fetch_add(1);
                if (i >= n) break;
                run_one(i);
            }
        });
    for (auto& t : pool) t.join();
    return errors;
}

std::vector<fs::path> list_cloud_files(const fs::path& input) {
    std::vector<fs::path> files;
    if (fs::is_directory(input)) {
        for (const auto& entry : fs::directory_iterator(input))
            if (entry.path().extension() == ".csv") files.push_back(entry.path());
        std::sort(files.begin(), files.end());
    } else if (fs::exists(input)) {
        files.push_back(input);
    } else {
        throw IoError("input path " + input.string() + " does not exist");
    }
    if (files.empty()) throw IoError("no .csv clouds under " + input.string());
    return files;
}

std::string cell_key(int chi_idx, int c_half_idx) {
    return "c" + std::to_string(chi_idx) + "_h" + std::to_string(c_half_idx);
}

void write_error_records(const fs::path& out_dir, const std::vector<fs::path>& files,
                         const std::vector<std::string>& errors) {
    json records = json::array();
    for (std::size_t i = 0; i < errors.size(); ++i) {
        if (errors[i].empty()) continue;
        json rec;
        rec["file"] = files[i].filename().string();
        rec["error"] = errors[i];
        records.push_back(std::move(rec));
        std::cerr << "relph: error in " << files[i].filename().string() << ": "
                  << errors[i] << "\n";
    }
    if (!records.empty()) atomic_write(out_dir / "errors.json", records.dump(2) + "\n");
}

int finish_batch(const fs::path& out_dir, const std::vector<fs::path>& files,
                 const std::vector<std::string>& errors, bool keep_going) {
    write_error_records(out_dir, files, errors);
    const bool any = std::any_of(errors.begin(), errors.end(),
                                 [](const std::string& e) { return !e.empty(); });
    if (!any) return kExitOk;
    return keep_going ? kExitOk : kExitIo;
}

ImageSpec base_spec(int rows, int cols, double sigma) {
    ImageSpec spec;
    spec.rows = rows;
    spec.cols = cols;
    spec.sigma = sigma;
    return spec;
}

double unbounded_if_negative(double v) { return v < 0.0 ? kInfValue : v; }

// ---------------------------------------------------------------------------
// cluster analysis shared by `cluster` and `pipeline witness`

struct CellMeta {
    int chi_idx = -1;
    int c_half_idx = -1;
    std::string designed;
    bool interior = false;
};

json cluster_analysis(const Matrix& X, const std::vector<int>& assignments, int k,
                      std::uint64_t seed, int n_init,
                      const std::vector<std::string>& row_cells,
                      const std::map<std::string, CellMeta>& cells,
                      const std::string& svg_prefix, double inertia) {
    (void)X;
    const auto purity = cluster_purity(assignments, row_cells);

    // modal cluster per cell (ties -> smallest id)
    std::map<std::string, std::map<int, int>> tallies;
    for (std::size_t i = 0; i < row_cells.size(); ++i)
        ++tallies[row_cells[i]][assignments[i]];
    std::map<std::string, int> modal;
    for (const auto& [key, tally] : tallies) {
        int best_cluster = -1, best_count = -1;
        for (const auto& [cluster, count] : tally)
            if (count > best_count) {
                best_cluster = cluster;
                best_count = count;
            }
        modal[key] = best_cluster;
    }

    // map clusters to regimes on interior cells: best bijection for k == 3,
    // greedy majority otherwise
    const std::vector<std::string> regimes{"elimination", "equilibrium", "escape"};
    std::map<int, std::string> cluster_regime;
    int interior_cells = 0;
    int agree = 0;
    std::vector<std::pair<std::string, std::string>> interior_modal;  // (designed, key)
    for (const auto& [key, meta] : cells)
        if (meta.interior && modal.count(key)) {
            ++interior_cells;
            interior_modal.emplace_back(meta.designed, key);
        }
    if (interior_cells > 0) {
        if (k == 3) {
            int perm[3] = {0, 1, 2};
            int best = -1;
            std::array<int, 3> best_perm{0, 1, 2};
            do {
                int count = 0;
                for (const auto& [designed, key] : interior_modal)
                    if (regimes[perm[modal.at(key)]] == designed) ++count;
                if (count > best) {
                    best = count;
                    best_perm = {perm[0], perm[1], perm[2]};
                }
            } while (std::next_permutation(perm, perm + 3));
            agree = std::max(best, 0);
            for (int c = 0; c < 3; ++c) cluster_regime[c] = regimes[best_perm[c]];
        } else {
            std::map<int, std::map<std::string, int>> votes;
            for (const auto& [designed, key] : interior_modal)
                ++votes[modal.at(key)][designed];
            for (int c = 0; c < k; ++c) {
                std::string best_regime = "unassigned";
                int best_count = 0;
                if (votes.count(c))
                    for (const auto& [regime, count] : votes[c])
                        if (count > best_count) {
                            best_count = count;
                            best_regime = regime;
                        }
                cluster_regime[c] = best_regime;
            }
            for (const auto& [designed, key] : interior_modal)
                if (cluster_regime[modal.at(key)] == designed) ++agree;
        }
    }

    json out;
    out["k"] = k;
    out["seed"] = seed;
    out["n_init"] = n_init;
    out["inertia"] = inertia;
    json cells_json = json::object();
    double interior_purity_total = 0.0;
    int interior_purity_count = 0;
    for (const auto& [key, tally] : tallies) {
        json cell;
        cell["modal_cluster"] = modal.at(key);
        cell["purity"] = purity.at(key);
        if (cells.count(key)) {
            const auto& meta = cells.at(key);
            if (!meta.designed.empty()) cell["designed"] = meta.designed;
            cell["interior"] = meta.interior;
            if (!cluster_regime.empty())
                cell["mapped_regime"] = cluster_regime.at(modal.at(key));
            if (meta.interior) {
                interior_purity_total += purity.at(key);
                ++interior_purity_count;
            }
        }
        cells_json[key] = std::move(cell);
    }
    out["cells"] = std::move(cells_json);
    if (interior_cells > 0) {
        out["interior_cells"] = interior_cells;
        out["interior_modal_agreement"] =
            static_cast<double>(agree) / static_cast<double>(interior_cells);
        out["mean_interior_purity"] =
            interior_purity_total / static_cast<double>(interior_purity_count);
        json mapping = json::object();
        for (const auto& [cluster, regime] : cluster_regime)
            mapping[std::to_string(cluster)] = regime;
        out["cluster_to_regime"] = std::move(mapping);
    }

    if (!svg_prefix.empty() && !cells.empty()) {
        std::vector<int> modal_grid(81, -1);
        std::vector<double> purity_grid(81, 0.0);
        for (const auto& [key, meta] : cells) {
            if (meta.chi_idx < 0 || !modal.count(key)) continue;
            const std::size_t at = static_cast<std::size_t>(meta.c_half_idx) * 9 +
                                   static_cast<std::size_t>(meta.chi_idx);
            modal_grid[at] = modal.at(key);
            purity_grid[at] = purity.at(key);
        }
        atomic_write(svg_prefix + "_clusters.svg",
                     svg_grid_map(modal_grid, "modal cluster per knob cell (k=" +
                                                  std::to_string(k) + ")"));
        atomic_write(svg_prefix + "_purity.svg",
                     svg_grid_scalar_map(purity_grid, "cluster purity per knob cell"));
    }
    return out;
}

json classify_variant_json(const ClassifyResult& res) {
    json out;
    json splits = json::array();
    for (const auto& s : res.splits) {
        json split;
        split["accuracy"] = s.accuracy;
        split["c"] = s.chosen_c;
        splits.push_back(std::move(split));
    }
    out["splits"] = std::move(splits);
    out["median_accuracy"] = res.median_accuracy;
    return out;
}

}  // namespace

// ---------------------------------------------------------------------------

int cmd_generate(const GenerateOptions& opt) {
    const fs::path out_dir(opt.out_dir);
    fs::create_directories(out_dir);

    json manifest;
    manifest["domain"] = opt.domain;
    manifest["master_seed"] = opt.seed;
    json entries = json::array();

    if (opt.grid) {
        manifest["kind"] = "grid";
        manifest["reps"] = opt.reps;
        manifest["relabel"] = opt.relabel;
        const auto grid = generate_grid(opt.seed, opt.reps, opt.relabel);
        for (const auto& cell : grid) {
            const std::string id = "cloud_" + cell_key(cell.chi_idx, cell.c_half_idx) +
                                   "_r" + std::to_string(cell.rep);
            write_cloud_csv(out_dir / (id + ".csv"), cell.cloud);
            json e;
            e["id"] = id;
            e["file"] = id + ".csv";
            e["cell"] = cell_key(cell.chi_idx, cell.c_half_idx);
            e["chi_idx"] = cell.chi_idx;
            e["c_half_idx"] = cell.c_half_idx;
            e["chi"] = kChiGrid[cell.chi_idx];
            e["c_half"] = kCHalfGrid[cell.c_half_idx];
            e["rep"] = cell.rep;
            e["designed"] = to_string(cell.designed);
            e["realized"] = to_string(cell.realized);
            e["interior"] = cell.interior;
            entries.push_back(std::move(e));
        }
    } else {
        manifest["kind"] = "single";
        RegimeParams params;
        params.domain = opt.domain;
        params.seed = opt.seed;
        if (!opt.regime.empty()) params.regime = regime_from_string(opt.regime);
        if (opt.chi >= 0.0) params.chi = opt.chi;
        if (opt.c_half >= 0.0) params.c_half = opt.c_half;
        if (opt.vessels >= 0) params.vessels = opt.vessels;
        if (opt.tumor >= 0) params.tumor = opt.tumor;
        if (opt.necrotic >= 0) params.necrotic = opt.necrotic;
        if (opt.macrophages >= 0) params.macrophages = opt.macrophages;
        auto cloud = generate(params);
        if (opt.relabel > 0.0)
            cloud = relabel_noise(cloud, opt.relabel,
                                  {Species::N, Species::M1, Species::M2},
                                  mix_seed(opt.seed, 0x9E1AULL));
        write_cloud_csv(out_dir / "cloud.csv", cloud);
        json e;
        e["id"] = "cloud";
        e["file"] = "cloud.csv";
        if (!opt.regime.empty()) e["regime"] = opt.regime;
        if (opt.chi >= 0.0) e["chi"] = opt.chi;
        if (opt.c_half >= 0.0) e["c_half"] = opt.c_half;
        e["seed"] = opt.seed;
        e["relabel"] = opt.relabel;
        entries.push_back(std::move(e));
    }
    manifest["entries"] = std::move(entries);
    atomic_write(out_dir / "manifest.json", manifest.dump(2) + "\n");
    return kExitOk;
}

int cmd_diagrams(const DiagramsOptions& opt) {
    const auto files = list_cloud_files(opt.input);
    const fs::path out_dir(opt.out_dir);
    fs::create_directories(out_dir);

    const auto errors = parallel_for(files.size(), opt.jobs, [&](std::size_t i) {
        const auto cloud = read_cloud_csv(files[i]);
        const std::string stem = files[i].stem().string();

        struct Item {
            std::string name;
            FilteredComplex fc;
        };
        std::vector<Item> items;
        if (opt.family == "vr") {
            const Species s = species_from_string(opt.species);
            items.push_back({"vr_" + opt.species,
                             vietoris_rips(within_distances(cloud, s),
                                           unbounded_if_negative(opt.vr_max))});
        } else if (opt.family == "dowker") {
            const Species u = species_from_string(opt.pair.at(0));
            const Species v = species_from_string(opt.pair.at(1));
            items.push_back({"dowker_" + opt.pair[0] + "_" + opt.pair[1],
                             dowker_pair(cloud, u, v)});
        } else if (opt.family == "witness") {
            const auto vessels = cloud.subcloud(Species::V);
            if (vessels.empty())
                throw EmptySubcloudError("landmark species V has no points");
            const auto tri = delaunay_2d(vessels);
            for (Species s : witness_species_list(opt.version)) {
                const auto witnesses = cloud.subcloud(s);
                if (witnesses.empty())
                    throw EmptySubcloudError("witness species " + to_string(s) +
                                             " has no points");
                items.push_back({"witness_" + to_string(s),
                                 witness_filtration(tri, vessels, witnesses,
                                                    to_string(s))});
            }
        } else {
            throw InvalidInputError("unknown family '" + opt.family + "'");
        }

        for (const auto& item : items) {
            const auto dg = diagrams(item.fc, opt.drop_zero);
            const std::string base = stem + "__" + item.name;
            write_diagram_json(out_dir / (base + "_pd0.json"), dg.pd0);
            write_diagram_json(out_dir / (base + "_pd1.json"), dg.pd1);
            if (opt.dump_complex)
                atomic_write(out_dir / (base + "_complex.json"), complex_to_json(item.fc));
            if (opt.svg)
                atomic_write(out_dir / (base + ".svg"),
                             svg_diagram_plot(dg.pd0, dg.pd1, base));
        }
    });
    return finish_batch(out_dir, files, errors, opt.keep_going);
}

int cmd_features(const FeaturesOptions& opt) {
    const auto files = list_cloud_files(opt.input);
    const fs::path out_file(opt.out_file);
    if (out_file.has_parent_path()) fs::create_directories(out_file.parent_path());

    const std::size_t n = files.size();
    std::vector<LabeledPointCloud> clouds(n);
    auto errors = parallel_for(n, opt.jobs, [&](std::size_t i) {
        clouds[i] = read_cloud_csv(files[i]);
    });

    std::vector<std::vector<double>> rows(n);
    std::vector<std::string> names;
    const ImageSpec base = base_spec(opt.image_rows, opt.image_cols, opt.sigma);

    auto merge_errors = [&](const std::vector<std::string>& more) {
        for (std::size_t i = 0; i < n; ++i)
            if (errors[i].empty() && !more[i].empty()) errors[i] = more[i];
    };

    if (opt.kind == "simple") {
        names = simple_entry_names();
        merge_errors(parallel_for(n, opt.jobs, [&](std::size_t i) {
            if (!errors[i].empty()) return;
            rows[i] = simple_descriptor(clouds[i]).values;
        }));
    } else if (opt.kind == "witness") {
        names = witness_entry_names(opt.version);
        merge_errors(parallel_for(n, opt.jobs, [&](std::size_t i) {
            if (!errors[i].empty()) return;
            rows[i] = witness_vector(clouds[i], opt.version).values;
        }));
    } else if (opt.kind == "dowker") {
        names = dowker_entry_names(base);
        std::vector<DowkerDiagramSet> sets(n);
        merge_errors(parallel_for(n, opt.jobs, [&](std::size_t i) {
            if (!errors[i].empty()) return;
            sets[i] = dowker_diagrams(clouds[i]);
        }));
        std::vector<DowkerDiagramSet> good;
        for (std::size_t i = 0; i < n; ++i)
            if (errors[i].empty()) good.push_back(sets[i]);
        const auto specs = fit_dowker_image_specs(good, base);
        merge_errors(parallel_for(n, opt.jobs, [&](std::size_t i) {
            if (!errors[i].empty()) return;
            rows[i] = dowker_features(sets[i], specs).values;
        }));
    } else if (opt.kind == "vr") {
        names = vr_entry_names(base);
        std::vector<VRDiagramSet> sets(n);
        merge_errors(parallel_for(n, opt.jobs, [&](std::size_t i) {
            if (!errors[i].empty()) return;
            sets[i] = vr_diagrams(clouds[i], unbounded_if_negative(opt.vr_max));
        }));
        std::vector<VRDiagramSet> good;
        for (std::size_t i = 0; i < n; ++i)
            if (errors[i].empty()) good.push_back(sets[i]);
        const auto specs = fit_vr_image_specs(good, base);
        merge_errors(parallel_for(n, opt.jobs, [&](std::size_t i) {
            if (!errors[i].empty()) return;
            rows[i] = vr_features(sets[i], specs).values;
        }));
    } else {
        throw InvalidInputError("unknown feature kind '" + opt.kind + "'");
    }

    std::vector<std::string> ids;
    std::vector<int> labels;
    Matrix X;
    X.cols = names.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (!errors[i].empty()) continue;
        ids.push_back(files[i].stem().string());
        X.v.insert(X.v.end(), rows[i].begin(), rows[i].end());
        ++X.rows;
        if (opt.label_omega) labels.push_back(omega_majority_label(clouds[i]));
    }
    atomic_write(out_file,
                 features_to_csv(ids, names, X, opt.label_omega ? &labels : nullptr));
    const fs::path err_dir =
        out_file.has_parent_path() ? out_file.parent_path() : fs::path(".");
    return finish_batch(err_dir, files, errors, opt.keep_going);
}

int cmd_dist(const DistOptions& opt) {
    const auto a = read_diagram_json(opt.file_a);
    const auto b = read_diagram_json(opt.file_b);
    double d = 0.0;
    if (opt.metric == "bottleneck")
        d = bottleneck(a, b);
    else if (opt.metric == "wasserstein")
        d = wasserstein(a, b, opt.q);
    else
        throw InvalidInputError("unknown metric '" + opt.metric + "'");
    std::cout << format_double(d) << "\n";
    return kExitOk;
}

int cmd_classify(const ClassifyOptions& opt) {
    const auto table = read_feature_csv(opt.features_file);
    if (table.labels.empty())
        throw InvalidInputError("classify needs a feature CSV with a label column");

    ClassifyConfig cfg;
    cfg.n_splits = opt.splits;
    cfg.cv_folds = opt.folds;
    cfg.test_fraction = opt.test_fraction;
    cfg.base_seed = opt.seed;
    const auto res = run_classification(table.X, table.labels, cfg);

    json out;
    out["features"] = fs::path(opt.features_file).filename().string();
    out["n_rows"] = table.X.rows;
    out["n_features"] = table.X.cols;
    out["seed"] = opt.seed;
    out["result"] = classify_variant_json(res);
    const fs::path out_file(opt.out_file);
    if (out_file.has_parent_path()) fs::create_directories(out_file.parent_path());
    atomic_write(out_file, out.dump(2) + "\n");

    if (!opt.svg_file.empty()) {
        std::vector<double> accs;
        for (const auto& s : res.splits) accs.push_back(s.accuracy);
        atomic_write(opt.svg_file,
                     svg_boxplot({{"accuracy", accs}}, "test accuracy over splits"));
    }
    std::cout << "median_accuracy " << format_double(res.median_accuracy) << "\n";
    return kExitOk;
}

int cmd_cluster(const ClusterOptions& opt) {
    const auto table = read_feature_csv(opt.features_file);

    std::vector<std::string> row_cells(table.ids.size());
    std::map<std::string, CellMeta> cells;
    if (!opt.manifest_file.empty()) {
        const json manifest = json::parse(read_file(opt.manifest_file));
        std::map<std::string, std::string> id_cell;
        for (const auto& e : manifest.at("entries")) {
            if (!e.contains("cell")) continue;
            id_cell[e.at("id").get<std::string>()] = e.at("cell").get<std::string>();
            CellMeta meta;
            meta.chi_idx = e.value("chi_idx", -1);
            meta.c_half_idx = e.value("c_half_idx", -1);
            meta.designed = e.value("designed", "");
            meta.interior = e.value("interior", false);
            cells[e.at("cell").get<std::string>()] = meta;
        }
        for (std::size_t i = 0; i < table.ids.size(); ++i) {
            auto it = id_cell.find(table.ids[i]);
            if (it == id_cell.end())
                throw InvalidInputError("row id '" + table.ids[i] +
                                        "' is missing from the manifest");
            row_cells[i] = it->second;
        }
    } else {
        for (std::size_t i = 0; i < table.ids.size(); ++i) row_cells[i] = table.ids[i];
    }

    const ClusterResult res = kmeans(table.X, opt.k, opt.seed, opt.n_init);
    json wrapped;
    wrapped["features"] = fs::path(opt.features_file).filename().string();
    wrapped["cluster"] =
        cluster_analysis(table.X, res.assignments, opt.k, opt.seed, opt.n_init,
                         row_cells, cells, opt.svg_prefix, res.inertia);
    json ids = json::object();
    for (std::size_t i = 0; i < table.ids.size(); ++i)
        ids[table.ids[i]] = res.assignments[i];
    wrapped["assignments"] = std::move(ids);

    const fs::path out_file(opt.out_file);
    if (out_file.has_parent_path()) fs::create_directories(out_file.parent_path());
    atomic_write(out_file, wrapped.dump(2) + "\n");
    if (wrapped["cluster"].contains("interior_modal_agreement"))
        std::cout << "interior_modal_agreement "
                  << format_double(
                         wrapped["cluster"]["interior_modal_agreement"].get<double>())
                  << "\n";
    return kExitOk;
}

namespace {

int pipeline_witness(const PipelineOptions& opt) {
    const fs::path out_dir(opt.out_dir);
    fs::create_directories(out_dir);
    const double t0 = now_seconds();

    auto grid = generate_grid(opt.seed, opt.reps, opt.relabel);
    const std::size_t n = grid.size();

    std::vector<std::vector<double>> rows_v1(n), rows_v2(n);
    std::vector<std::string> row_cells(n), ids(n);
    std::map<std::string, CellMeta> cells;
    for (std::size_t i = 0; i < n; ++i) {
        const auto& cell = grid[i];
        row_cells[i] = cell_key(cell.chi_idx, cell.c_half_idx);
        ids[i] = "cloud_" + row_cells[i] + "_r" + std::to_string(cell.rep);
        CellMeta meta;
        meta.chi_idx = cell.chi_idx;
        meta.c_half_idx = cell.c_half_idx;
        meta.designed = to_string(cell.designed);
        meta.interior = cell.interior;
        cells[row_cells[i]] = meta;
    }

    const auto errors = parallel_for(n, opt.jobs, [&](std::size_t i) {
        if (opt.write_clouds)
            write_cloud_csv(out_dir / (ids[i] + ".csv"), grid[i].cloud);
        auto both = witness_vector_versions(grid[i].cloud);
        rows_v1[i] = std::move(both.v1.values);
        rows_v2[i] = std::move(both.v2.values);
    });
    for (std::size_t i = 0; i < n; ++i)
        if (!errors[i].empty())
            throw Error("witness pipeline failed on " + ids[i] + ": " + errors[i]);

    json results;
    results["reps"] = opt.reps;
    results["seed"] = opt.seed;
    results["relabel"] = opt.relabel;
    results["k"] = opt.k;
    for (int version : {1, 2}) {
        const auto& rows = version == 1 ? rows_v1 : rows_v2;
        Matrix X;
        X.rows = n;
        X.cols = rows[0].size();
        for (const auto& row : rows) X.v.insert(X.v.end(), row.begin(), row.end());
        atomic_write(out_dir / ("witness_v" + std::to_string(version) + ".csv"),
                     features_to_csv(ids, witness_entry_names(version), X));
        const ClusterResult res = kmeans(X, opt.k, opt.seed, 10);
        const std::string prefix =
            (out_dir / ("witness_v" + std::to_string(version))).string();
        results["witness_v" + std::to_string(version)] =
            cluster_analysis(X, res.assignments, opt.k, opt.seed, 10, row_cells, cells,
                             prefix, res.inertia);
    }
    atomic_write(out_dir / "results.json", results.dump(2) + "\n");
    std::cout << "pipeline witness wall_seconds " << format_double(now_seconds() - t0)
              << "\n";
    return kExitOk;
}

int pipeline_classify(const PipelineOptions& opt) {
    const fs::path out_dir(opt.out_dir);
    fs::create_directories(out_dir);
    const double t0 = now_seconds();

    const auto corpus = generate_classification_corpus(opt.seed, opt.corpus_size);
    const std::size_t n = corpus.size();
    std::vector<std::string> ids(n);
    std::vector<int> labels(n);
    for (std::size_t i = 0; i < n; ++i) {
        ids[i] = "sample_" + std::to_string(i);
        labels[i] = corpus[i].label;
    }

    std::vector<DowkerDiagramSet> dowker_sets(n);
    std::vector<VRDiagramSet> vr_sets(n);
    std::vector<std::vector<double>> simple_rows(n);
    const auto errors = parallel_for(n, opt.jobs, [&](std::size_t i) {
        if (opt.write_clouds)
            write_cloud_csv(out_dir / (ids[i] + ".csv"), corpus[i].cloud);
        dowker_sets[i] = dowker_diagrams(corpus[i].cloud);
        vr_sets[i] = vr_diagrams(corpus[i].cloud);
        simple_rows[i] = simple_descriptor(corpus[i].cloud).values;
    });
    for (std::size_t i = 0; i < n; ++i)
        if (!errors[i].empty())
            throw Error("classification pipeline failed on " + ids[i] + ": " +
                        errors[i]);

    const ImageSpec base = base_spec(20, 20, 1.0);
    const auto dspecs = fit_dowker_image_specs(dowker_sets, base);
    const auto vspecs = fit_vr_image_specs(vr_sets, base);

    Matrix dowker_X = Matrix::zeros(n, 2400);
    Matrix vr_X = Matrix::zeros(n, 1600);
    Matrix tv_X = Matrix::zeros(n, 400);  // pd0 of the (T,V) pair, third block
    Matrix simple_X = Matrix::zeros(n, 6);
    const auto img_errors = parallel_for(n, opt.jobs, [&](std::size_t i) {
        const auto d = dowker_features(dowker_sets[i], dspecs).values;
        std::copy(d.begin(), d.end(), dowker_X.row(i));
        std::copy(d.begin() + 800, d.begin() + 1200, tv_X.row(i));
        const auto v = vr_features(vr_sets[i], vspecs).values;
        std::copy(v.begin(), v.end(), vr_X.row(i));
        std::copy(simple_rows[i].begin(), simple_rows[i].end(), simple_X.row(i));
    });
    for (std::size_t i = 0; i < n; ++i)
        if (!img_errors[i].empty()) throw Error("image stage failed: " + img_errors[i]);

    atomic_write(out_dir / "features_dowker.csv",
                 features_to_csv(ids, dowker_entry_names(base), dowker_X, &labels));
    atomic_write(out_dir / "features_vr.csv",
                 features_to_csv(ids, vr_entry_names(base), vr_X, &labels));
    atomic_write(out_dir / "features_simple.csv",
                 features_to_csv(ids, simple_entry_names(), simple_X, &labels));

    ClassifyConfig cfg;
    cfg.n_splits = opt.splits;
    cfg.base_seed = opt.seed;

    json results;
    results["n"] = n;
    results["seed"] = opt.seed;
    results["labels_positive"] =
        static_cast<int>(std::count(labels.begin(), labels.end(), 1));
    json variants = json::object();
    std::vector<std::pair<std::string, std::vector<double>>> box_groups;
    const std::vector<std::pair<std::string, const Matrix*>> variant_list{
        {"dowker", &dowker_X},
        {"vr", &vr_X},
        {"dowker_pd0_T_V", &tv_X},
        {"simple", &simple_X}};
    for (const auto& [name, X] : variant_list) {
        const auto res = run_classification(*X, labels, cfg);
        variants[name] = classify_variant_json(res);
        std::vector<double> accs;
        for (const auto& s : res.splits) accs.push_back(s.accuracy);
        box_groups.emplace_back(name, accs);
        std::cout << "variant " << name << " median_accuracy "
                  << format_double(res.median_accuracy) << "\n";
    }
    results["variants"] = std::move(variants);
    atomic_write(out_dir / "results.json", results.dump(2) + "\n");
    atomic_write(out_dir / "accuracy_boxplot.svg",
                 svg_boxplot(box_groups, "test accuracy by feature set"));
    std::cout << "pipeline classify wall_seconds " << format_double(now_seconds() - t0)
              << "\n";
    return kExitOk;
}

}  // namespace

int cmd_pipeline(const PipelineOptions& opt) {
    if (opt.kind == "witness") return pipeline_witness(opt);
    if (opt.kind == "classify") return pipeline_classify(opt);
    throw InvalidInputError("unknown pipeline '" + opt.kind + "'");
}

}  // namespace relph::cli
