#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace relph::cli {

// Exit codes: 0 success (including kept-going per-file errors), 1 config
// error, 2 fatal I/O error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;
inline constexpr int kExitIo = 2;

struct GenerateOptions {
    std::string out_dir;
    bool grid = false;
    int reps = 20;
    double relabel = 0.0;
    std::string regime;  // empty unless single-cloud mode
    double chi = -1.0;
    double c_half = -1.0;
    double domain = 100.0;
    std::uint64_t seed = 0;
    int vessels = -1;
    int tumor = -1;
    int necrotic = -1;
    int macrophages = -1;
};

struct DiagramsOptions {
    std::string input;  // cloud CSV file or directory
    std::string out_dir;
    std::string family;  // vr | dowker | witness
    std::string species = "T";
    std::vector<std::string> pair{"T", "V"};
    int version = 1;
    double vr_max = -1.0;  // <0 means unbounded
    bool drop_zero = false;
    bool svg = false;
    bool dump_complex = false;
    bool keep_going = true;
    int jobs = 1;
};

struct FeaturesOptions {
    std::string input;
    std::string out_file;
    std::string kind;  // dowker | vr | witness | simple
    int version = 1;
    double vr_max = -1.0;
    int image_rows = 20;
    int image_cols = 20;
    double sigma = 1.0;
    bool label_omega = false;
    bool keep_going = true;
    int jobs = 1;
};

struct DistOptions {
    std::string metric = "bottleneck";
    double q = 1.0;
    std::string file_a;
    std::string file_b;
};

struct ClassifyOptions {
    std::string features_file;
    std::string out_file;
    int splits = 10;
    int folds = 5;
    double test_fraction = 0.2;
    std::uint64_t seed = 0;
    std::string svg_file;
};

struct ClusterOptions {
    std::string features_file;
    std::string manifest_file;
    std::string out_file;
    int k = 3;
    int n_init = 10;
    std::uint64_t seed = 0;
    std::string svg_prefix;
};

struct PipelineOptions {
    std::string kind;  // witness | classify
    std::string out_dir;
    int reps = 20;
    int corpus_size = 180;
    double relabel = 0.0;
    std::uint64_t seed = 0;
    int k = 3;
    int splits = 10;
    int jobs = 1;
    bool write_clouds = true;
};

int cmd_generate(const GenerateOptions& opt);
int cmd_diagrams(const DiagramsOptions& opt);
int cmd_features(const FeaturesOptions& opt);
int cmd_dist(const DistOptions& opt);
int cmd_classify(const ClassifyOptions& opt);
int cmd_cluster(const ClusterOptions& opt);
int cmd_pipeline(const PipelineOptions& opt);

}  // namespace relph::cli
