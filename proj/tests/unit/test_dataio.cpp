#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "test_util.hpp"
#include "tsuq/csv.hpp"
#include "tsuq/error.hpp"
#include "tsuq/io_util.hpp"
#include "tsuq/loaders.hpp"
#include "tsuq/synth.hpp"
#include "tsuq/windows.hpp"

using namespace tsuq;
using namespace tsuq::dataio;

namespace {

// Single-feature table whose target at step t is just v[t].
FrameTable ramp_table(std::size_t n) {
    FrameTable f;
    f.feature_names = {"value"};
    f.target_col = 0;
    std::vector<double> flat;
    for (std::size_t t = 0; t < n; ++t) {
        f.timestamps.push_back(static_cast<std::int64_t>(t));
        flat.push_back(static_cast<double>(t));
    }
    f.features = Tensor({n, 1}, std::move(flat));
    return f;
}

}  // namespace

TEST_CASE("csv parsing handles quoting and line endings") {
    TempDir tmp("csv");
    const std::string path = tmp.str() + "/t.csv";

    atomic_write_file(path, "a,b,c\r\n1,\"x,y\",3\r\n4,\"he said \"\"hi\"\"\",6\n");
    CsvTable t = read_csv(path);
    REQUIRE(t.header.size() == 3);
    CHECK(t.header[2] == "c");  // no trailing \r
    REQUIRE(t.rows.size() == 2);
    CHECK(t.rows[0][1] == "x,y");
    CHECK(t.rows[1][1] == "he said \"hi\"");

    // Trailing blank line is not a row.
    atomic_write_file(path, "a,b\n1,2\n\n");
    CHECK(read_csv(path).rows.size() == 1);

    // Ragged row names its 1-based line.
    atomic_write_file(path, "a,b,c\n1,2,3\n4,5\n");
    try {
        read_csv(path);
        FAIL("expected FormatError");
    } catch (const FormatError& e) {
        CHECK(std::string(e.what()).find(":3") != std::string::npos);
    }

    CHECK_THROWS_AS(read_csv(tmp.str() + "/absent.csv"), IoError);
}

TEST_CASE("standardize produces unit moments and round-trips") {
    FrameTable f;
    f.feature_names = {"value", "aux"};
    f.target_col = 0;
    std::vector<double> flat;
    for (int t = 0; t < 50; ++t) {
        f.timestamps.push_back(t);
        flat.push_back(3.0 + 2.0 * t);
        flat.push_back(std::sin(0.3 * t) * 10.0 - 4.0);
    }
    f.features = Tensor({50, 2}, std::move(flat));

    auto [z, stats] = standardize(f);
    for (std::size_t c = 0; c < 2; ++c) {
        double mean = 0.0, var = 0.0;
        for (std::size_t t = 0; t < 50; ++t) mean += z.features.at(t, c);
        mean /= 50.0;
        for (std::size_t t = 0; t < 50; ++t) {
            const double d = z.features.at(t, c) - mean;
            var += d * d;
        }
        var /= 50.0;  // population convention, matching the stats themselves
        CHECK(std::abs(mean) < 1e-9);
        CHECK(std::abs(std::sqrt(var) - 1.0) < 1e-9);
    }

    FrameTable back = destandardize(z, stats);
    for (std::size_t i = 0; i < f.features.size(); ++i) {
        CHECK(back.features[i] == doctest::Approx(f.features[i]).epsilon(1e-9));
    }

    // Frozen external stats are applied as-is.
    NormStats fixed;
    fixed.mean = {10.0, 0.0};
    fixed.std = {2.0, 1.0};
    auto [zf, sf] = standardize(f, &fixed);
    CHECK(zf.features.at(0, 0) == doctest::Approx((3.0 - 10.0) / 2.0).epsilon(1e-12));
    CHECK(sf.mean[0] == 10.0);

    // A constant column cannot be z-scored; the error names it.
    FrameTable flatf = ramp_table(40);
    for (std::size_t t = 0; t < 40; ++t) flatf.features.at(t, 0) = 5.0;
    try {
        standardize(flatf);
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("value") != std::string::npos);
    }
}

TEST_CASE("window construction covers the series exactly") {
    // 14 rows, 12 past, 1 ahead: two windows.
    auto w = make_windows(ramp_table(14), 12, 1);
    REQUIRE(w.count() == 2);
    CHECK(w.x.at(0, 0, 0) == 0.0);
    CHECK(w.x.at(0, 11, 0) == 11.0);
    CHECK(w.y.at(0, 0) == 12.0);
    CHECK(w.x.at(1, 0, 0) == 1.0);
    CHECK(w.y.at(1, 0) == 13.0);

    // 24 rows with a 12-step horizon: one window targeting rows 12..23.
    auto w12 = make_windows(ramp_table(24), 12, 12);
    REQUIRE(w12.count() == 1);
    for (std::size_t h = 0; h < 12; ++h) CHECK(w12.y.at(0, h) == 12.0 + double(h));

    // Multi-step targets stay consecutive.
    auto w3 = make_windows(ramp_table(20), 12, 3);
    REQUIRE(w3.count() == 6);
    CHECK(w3.y.at(0, 0) == 12.0);
    CHECK(w3.y.at(0, 1) == 13.0);
    CHECK(w3.y.at(0, 2) == 14.0);

    CHECK_THROWS_AS(make_windows(ramp_table(12), 12, 1), InvalidArgument);
    CHECK_THROWS_AS(make_windows(ramp_table(20), 0, 1), InvalidArgument);
}

TEST_CASE("chronological split re-windows each side") {
    auto w = make_windows(ramp_table(100), 12, 1);
    auto [train, test] = split(w, 0.8);
    // Train side is rows [0, 80): 80 - 12 windows. Test side [80, 100): 8.
    CHECK(train.count() == 68);
    CHECK(test.count() == 8);
    CHECK(train.y.at(0, 0) == 12.0);
    CHECK(train.y.at(67, 0) == 79.0);  // never crosses the boundary
    CHECK(test.x.at(0, 0, 0) == 80.0);
    CHECK(test.y.at(0, 0) == 92.0);
    CHECK(test.y.at(7, 0) == 99.0);

    auto [t2, e2] = split(w, 0.8);
    for (std::size_t i = 0; i < t2.y.size(); ++i) CHECK(t2.y[i] == train.y[i]);

    CHECK_THROWS_AS(split(w, 0.0), InvalidArgument);
    CHECK_THROWS_AS(split(w, 1.0), InvalidArgument);
    // 0.9 leaves a 10-row test side: too short for past 12 + horizon 1.
    CHECK_THROWS_AS(split(w, 0.9), InvalidArgument);

    auto cached = make_windows(ramp_table(30), 12, 1);
    cached.source = FrameTable{};
    CHECK_THROWS_AS(split(cached, 0.8), InvalidArgument);
}

TEST_CASE("window cache round trip") {
    TempDir tmp("wcache");
    const std::string path = tmp.str() + "/w.bin";

    FrameTable raw = ramp_table(40);
    auto [z, stats] = standardize(raw);
    auto w = make_windows(z, 12, 2, &stats);
    save_window_cache(w, path);
    CHECK(std::filesystem::exists(path + ".stats"));

    WindowSet r = load_window_cache(path);
    CHECK(r.past == 12);
    CHECK(r.horizon == 2);
    REQUIRE(r.x.size() == w.x.size());
    for (std::size_t i = 0; i < w.x.size(); ++i) CHECK(r.x[i] == w.x[i]);
    for (std::size_t i = 0; i < w.y.size(); ++i) CHECK(r.y[i] == w.y[i]);
    CHECK(r.target_mean == w.target_mean);
    CHECK(r.target_std == w.target_std);
    REQUIRE(r.norm_stats.mean.size() == 1);
    CHECK(r.norm_stats.mean[0] == stats.mean[0]);
    CHECK(r.norm_stats.std[0] == stats.std[0]);

    // The source series is deliberately not persisted.
    CHECK(r.source.rows() == 0);
    CHECK_THROWS_AS(split(r, 0.8), InvalidArgument);

    atomic_write_file(path, "junk");
    CHECK_THROWS_AS(load_window_cache(path), FormatError);
    CHECK_THROWS_AS(load_window_cache(tmp.str() + "/none.bin"), IoError);
}

TEST_CASE("pm25 loader cleans the raw file") {
    TempDir tmp("pm25");
    const std::string path = tmp.str() + "/pm.csv";
    atomic_write_file(path,
                      "No,year,month,day,hour,pm2.5,DEWP,TEMP,PRES,cbwd,Iws,Is,Ir\n"
                      "1,2010,1,1,0,NA,-21,-11,1021,NW,1.79,0,0\n"
                      "2,2010,1,1,1,100,-20,-10,1020,NW,2,0,0\n"
                      "3,2010,1,1,2,NA,-19,-9,1019,SE,3,1,2\n"
                      "4,2010,1,1,3,120,-18,-8,1018,NW,4,0,0\n");
    FrameTable f = load_pm25(path);
    REQUIRE(f.rows() == 3);  // the leading gap is dropped
    CHECK(f.cols() == 8);
    CHECK(f.target_col == 0);
    CHECK(f.feature_names[0] == "pm2.5");
    CHECK(f.feature_names[4] == "cbwd");

    CHECK(f.features.at(0, 0) == 100.0);
    CHECK(f.features.at(1, 0) == 100.0);  // forward fill
    CHECK(f.features.at(2, 0) == 120.0);
    CHECK(f.features.at(0, 4) == 0.0);  // NW first seen
    CHECK(f.features.at(1, 4) == 1.0);  // SE second
    CHECK(f.features.at(2, 4) == 0.0);
    CHECK(f.features.at(1, 7) == 2.0);  // Ir passes through

    CHECK(f.timestamps[1] - f.timestamps[0] == 1);  // hourly
    CHECK(f.timestamps[2] - f.timestamps[1] == 1);

    atomic_write_file(path,
                      "No,year,month,day,hour,DEWP,TEMP,PRES,cbwd,Iws,Is,Ir\n"
                      "1,2010,1,1,0,-21,-11,1021,NW,1.79,0,0\n");
    try {
        load_pm25(path);
        FAIL("expected FormatError");
    } catch (const FormatError& e) {
        CHECK(std::string(e.what()).find("pm2.5") != std::string::npos);
    }

    atomic_write_file(path,
                      "No,year,month,day,hour,pm2.5,DEWP,TEMP,PRES,cbwd,Iws,Is,Ir\n"
                      "1,2010,1,1,0,NA,-21,-11,1021,NW,1.79,0,0\n");
    CHECK_THROWS_AS(load_pm25(path), FormatError);  // pm2.5 never observed
}

TEST_CASE("jena loader downsamples to hourly rows") {
    TempDir tmp("jena");
    const std::string path = tmp.str() + "/jena.csv";
    std::string csv = "Date Time,p (mbar),T (degC)\n";
    for (int i = 0; i < 60; ++i) {
        const int hh = (i * 10) / 60;
        const int mm = (i * 10) % 60;
        char ts[40];
        std::snprintf(ts, sizeof(ts), "01.01.2009 %02d:%02d:00", hh, mm);
        csv += std::string(ts) + "," + std::to_string(990.0 + i) + "," +
               std::to_string(-8.0 + 0.1 * i) + "\n";
    }
    atomic_write_file(path, csv);

    FrameTable f = load_jena(path);
    REQUIRE(f.rows() == 10);  // indices 0, 6, ..., 54
    CHECK(f.cols() == 2);
    CHECK(f.feature_names[0] == "p (mbar)");
    CHECK(f.target_col == 0);
    CHECK(f.features.at(0, 0) == 990.0);
    CHECK(f.features.at(1, 0) == 996.0);
    CHECK(f.features.at(9, 0) == 1044.0);
    CHECK(f.timestamps[1] - f.timestamps[0] == 60);  // minutes

    atomic_write_file(path, "Date Time,T (degC)\n01.01.2009 00:00:00,1\n");
    CHECK_THROWS_AS(load_jena(path), FormatError);  // target column required

    atomic_write_file(path, "Date Time,p (mbar)\nnot-a-time,1\n");
    CHECK_THROWS_AS(load_jena(path), FormatError);
}

TEST_CASE("synthetic series closed forms") {
    FrameTable sine = synth_series(SynthKind::Sine, 48, 0.0, 1);
    CHECK(sine.rows() == 48);
    CHECK(sine.cols() == 1);
    CHECK(sine.features.at(0, 0) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(sine.features.at(6, 0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(sine.features.at(12, 0) == doctest::Approx(0.0).epsilon(1e-9));

    FrameTable ar = synth_series(SynthKind::Ar1, 40, 0.0, 1);
    CHECK(ar.features.at(0, 0) == 1.0);
    for (int t : {1, 5, 20}) {
        CHECK(ar.features.at(t, 0) == doctest::Approx(std::pow(0.9, t)).epsilon(1e-12));
    }

    FrameTable lin = synth_series(SynthKind::Linear, 35, 0.0, 1);
    CHECK(lin.features.at(10, 0) == doctest::Approx(0.1).epsilon(1e-12));

    FrameTable a = synth_series(SynthKind::Sine, 40, 0.3, 77);
    FrameTable b = synth_series(SynthKind::Sine, 40, 0.3, 77);
    for (std::size_t i = 0; i < a.features.size(); ++i) {
        CHECK(a.features[i] == b.features[i]);
    }
    FrameTable c = synth_series(SynthKind::Sine, 40, 0.3, 78);
    bool differs = false;
    for (std::size_t i = 0; i < a.features.size(); ++i) {
        differs = differs || a.features[i] != c.features[i];
    }
    CHECK(differs);

    CHECK_THROWS_AS(synth_series(SynthKind::Sine, 29, 0.0, 1), InvalidArgument);
    CHECK_THROWS_AS(synth_series(SynthKind::Sine, 40, -0.1, 1), InvalidArgument);
    CHECK(synth_kind_from_string("ar1") == SynthKind::Ar1);
    CHECK_THROWS_AS(synth_kind_from_string("brownian"), ConfigError);
}
