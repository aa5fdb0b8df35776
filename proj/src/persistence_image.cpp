#include "relph/persistence_image.hpp"

#include <cmath>

#include "relph/errors.hpp"

namespace relph {

namespace {

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

}  // namespace

void ImageSpec::validate() const {
    if (rows <= 0 || cols <= 0)
        throw InvalidInputError("image resolution must be positive");
    if (!(sigma > 0.0)) throw InvalidInputError("sigma must be positive");
    if (!(birth_max > birth_min))
        throw InvalidInputError("birth range is empty");
    if (!(pers_max > pers_min))
        throw InvalidInputError("persistence range is empty");
    if (!(weight_scale >= 0.0))
        throw InvalidInputError("weight_scale must be nonnegative");
    if (weight != "linear-in-persistence")
        throw InvalidInputError("unknown weight tag '" + weight + "'");
}

double PersistenceImage::sum() const {
    double s = 0.0;
    for (double v : flat) s += v;
    return s;
}

PersistenceImage persistence_image(const PersistenceDiagram& pd, const ImageSpec& spec) {
    spec.validate();
    PersistenceImage img;
    img.rows = spec.rows;
    img.cols = spec.cols;
    img.flat.assign(static_cast<std::size_t>(spec.rows) * spec.cols, 0.0);

    const double bw = (spec.birth_max - spec.birth_min) / spec.cols;
    const double pw = (spec.pers_max - spec.pers_min) / spec.rows;

    std::vector<double> col_mass(spec.cols), row_mass(spec.rows);
    for (const auto& [b, d] : pd.pairs) {
        if (std::isinf(d)) {
            ++img.dropped_infinite;
            continue;
        }
        const double p = d - b;
        const double w =
            (p <= 0.0 || spec.weight_scale <= 0.0)
                ? 0.0
                : std::min(p / spec.weight_scale, 1.0);
        if (w == 0.0) continue;

        for (int c = 0; c < spec.cols; ++c) {
            const double x0 = spec.birth_min + c * bw;
            col_mass[c] = normal_cdf((x0 + bw - b) / spec.sigma) -
                          normal_cdf((x0 - b) / spec.sigma);
        }
        for (int r = 0; r < spec.rows; ++r) {
            const double y0 = spec.pers_min + r * pw;
            row_mass[r] = normal_cdf((y0 + pw - p) / spec.sigma) -
                          normal_cdf((y0 - p) / spec.sigma);
        }
        for (int r = 0; r < spec.rows; ++r) {
            const double wr = w * row_mass[r];
            double* out = img.flat.data() + static_cast<std::size_t>(r) * spec.cols;
            for (int c = 0; c < spec.cols; ++c) out[c] += wr * col_mass[c];
        }
    }
    return img;
}

}  // namespace relph
