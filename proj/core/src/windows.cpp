#include "tsuq/windows.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>

#include "tsuq/error.hpp"
#include "tsuq/io_util.hpp"

namespace tsuq::dataio {

WindowSet make_windows(const FrameTable& f, std::size_t past, std::size_t horizon,
                       const NormStats* stats) {
    if (past < 1 || horizon < 1) {
        throw InvalidArgument("make_windows: past and horizon must be >= 1");
    }
    const std::size_t rows = f.rows();
    if (rows < past + horizon) {
        throw InvalidArgument("make_windows: series of " + std::to_string(rows) +
                              " rows is too short for past=" + std::to_string(past) +
                              " horizon=" + std::to_string(horizon));
    }
    const std::size_t cols = f.cols();
    const std::size_t n = rows - past - horizon + 1;

    WindowSet w;
    w.past = past;
    w.horizon = horizon;
    w.x = Tensor({n, past, cols});
    w.y = Tensor({n, horizon});
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t t = 0; t < past; ++t) {
            for (std::size_t c = 0; c < cols; ++c) {
                w.x.at(i, t, c) = f.features.at(i + t, c);
            }
        }
        for (std::size_t h = 0; h < horizon; ++h) {
            w.y.at(i, h) = f.features.at(i + past + h, f.target_col);
        }
    }
    if (stats) {
        w.norm_stats = *stats;
        if (f.target_col >= stats->mean.size()) {
            throw InvalidArgument("make_windows: stats do not cover target column");
        }
        w.target_mean = stats->mean[f.target_col];
        w.target_std = stats->std[f.target_col];
    }
    w.source = f;
    return w;
}

std::pair<WindowSet, WindowSet> split(const WindowSet& w, double train_fraction) {
    if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
        throw InvalidArgument("split: train_fraction must be in (0,1)");
    }
    if (w.source.rows() == 0) {
        throw InvalidArgument("split: window set has no source series");
    }
    const std::size_t rows = w.source.rows();
    const std::size_t boundary =
        static_cast<std::size_t>(std::floor(static_cast<double>(rows) * train_fraction));

    const std::size_t need = w.past + w.horizon;
    if (boundary < need || rows - boundary < need) {
        throw InvalidArgument("split: a side of the " + std::to_string(rows) +
                              "-row series at boundary " + std::to_string(boundary) +
                              " yields zero windows");
    }
    const NormStats* stats = w.norm_stats.empty() ? nullptr : &w.norm_stats;
    WindowSet train = make_windows(slice_rows(w.source, 0, boundary), w.past,
                                   w.horizon, stats);
    WindowSet test = make_windows(slice_rows(w.source, boundary, rows), w.past,
                                  w.horizon, stats);
    return {std::move(train), std::move(test)};
}

namespace {

constexpr char kCacheMagic[8] = {'T', 'S', 'U', 'Q', 'W', 'I', 'N', '1'};

void write_u64(std::ostream& out, std::uint64_t v) {
    out.write(reinterpret_cast<const char*>(&v), sizeof(v));
}

std::uint64_t read_u64(std::istream& in, const std::string& path) {
    std::uint64_t v = 0;
    in.read(reinterpret_cast<char*>(&v), sizeof(v));
    if (!in) throw FormatError(path + ": truncated window cache");
    return v;
}

void write_tensor(std::ostream& out, const Tensor& t) {
    write_u64(out, t.rank());
    for (std::size_t d = 0; d < t.rank(); ++d) write_u64(out, t.dim(d));
    out.write(reinterpret_cast<const char*>(t.data().data()),
              static_cast<std::streamsize>(t.size() * sizeof(double)));
}

Tensor read_tensor(std::istream& in, const std::string& path) {
    const std::uint64_t rank = read_u64(in, path);
    if (rank > 4) throw FormatError(path + ": implausible tensor rank in cache");
    std::vector<std::size_t> shape(rank);
    for (auto& d : shape) d = read_u64(in, path);
    Tensor t(shape);
    in.read(reinterpret_cast<char*>(t.data().data()),
            static_cast<std::streamsize>(t.size() * sizeof(double)));
    if (!in) throw FormatError(path + ": truncated window cache");
    return t;
}

}  // namespace

void save_window_cache(const WindowSet& w, const std::string& path) {
    std::ostringstream out(std::ios::binary);
    out.write(kCacheMagic, sizeof(kCacheMagic));
    write_u64(out, w.past);
    write_u64(out, w.horizon);
    write_tensor(out, w.x);
    write_tensor(out, w.y);
    atomic_write_file(path, out.str());

    std::ostringstream stats;
    stats << "target_mean " << fmt_double(w.target_mean) << "\n";
    stats << "target_std " << fmt_double(w.target_std) << "\n";
    for (std::size_t c = 0; c < w.norm_stats.mean.size(); ++c) {
        stats << "feature " << c << " " << fmt_double(w.norm_stats.mean[c]) << " "
              << fmt_double(w.norm_stats.std[c]) << "\n";
    }
    atomic_write_file(path + ".stats", stats.str());
}

WindowSet load_window_cache(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open window cache: " + path);
    char magic[8];
    in.read(magic, sizeof(magic));
    if (!in || std::string(magic, 8) != std::string(kCacheMagic, 8)) {
        throw FormatError(path + ": not a window cache file");
    }
    WindowSet w;
    w.past = read_u64(in, path);
    w.horizon = read_u64(in, path);
    w.x = read_tensor(in, path);
    w.y = read_tensor(in, path);

    std::istringstream stats(read_file(path + ".stats"));
    std::string key;
    while (stats >> key) {
        if (key == "target_mean") {
            stats >> w.target_mean;
        } else if (key == "target_std") {
            stats >> w.target_std;
        } else if (key == "feature") {
            std::size_t c;
            double m, s;
            stats >> c >> m >> s;
            w.norm_stats.mean.resize(std::max(w.norm_stats.mean.size(), c + 1));
            w.norm_stats.std.resize(w.norm_stats.mean.size());
            w.norm_stats.mean[c] = m;
            w.norm_stats.std[c] = s;
        } else {
            throw FormatError(path + ".stats: unknown key '" + key + "'");
        }
    }
    return w;
}

}  // namespace tsuq::dataio
