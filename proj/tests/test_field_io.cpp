#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "spde2d/errors.hpp"
#include "spde2d/field_io.hpp"

using namespace spde2d;

namespace {

FieldData make_field() {
    const SpdeParams params{0.0, 0.2, 0.2, 0.2};
    const NoiseSpec noise{0.5, -19.5, 0.1};
    const InitialSpectrum x0{{{ModeIndex{1, 1}, 3.0}}};
    const CoefficientPaths paths =
        simulate_coordinates(params, noise, x0, Truncation{4, 4}, TimeGrid{3}, 11);
    FieldData field = assemble_field(paths, params, SpatialGrid{6, 5});
    field.meta.noise = noise;
    field.meta.seed = 11;
    field.meta.config_text = "note=round-trip\n";
    return field;
}

}  // namespace

TEST_CASE("binary container round-trips bit for bit") {
    namespace fs = std::filesystem;
    const FieldData field = make_field();
    const fs::path path = fs::temp_directory_path() / "spde2d_test_field.bin";
    write_field(field, path.string());
    const FieldData loaded = read_field(path.string());
    CHECK(loaded.num_steps == field.num_steps);
    CHECK(loaded.M1 == field.M1);
    CHECK(loaded.M2 == field.M2);
    CHECK(loaded.values == field.values);
    CHECK(loaded.meta.params.theta2 == field.meta.params.theta2);
    CHECK(loaded.meta.noise.mu0 == field.meta.noise.mu0);
    CHECK(loaded.meta.trunc.L1 == 4);
    CHECK(loaded.meta.seed == 11);
    CHECK(loaded.meta.config_text.find("note=round-trip") != std::string::npos);
    fs::remove(path);
}

TEST_CASE("reader rejects foreign files") {
    namespace fs = std::filesystem;
    const fs::path path = fs::temp_directory_path() / "spde2d_not_a_field.bin";
    {
        std::ofstream out(path, std::ios::binary);
        out << "definitely not a field container";
    }
    CHECK_THROWS_AS(read_field(path.string()), config_error);
    fs::remove(path);
    CHECK_THROWS_AS(read_field((fs::temp_directory_path() / "missing_9821.bin").string()),
                    config_error);
}

TEST_CASE("csv export emits one row per sample") {
    const FieldData field = make_field();
    std::ostringstream out;
    write_field_csv(field, out);
    std::istringstream in(out.str());
    std::string line;
    int rows = 0;
    while (std::getline(in, line)) ++rows;
    CHECK(rows == 1 + (field.num_steps + 1) * (field.M1 + 1) * (field.M2 + 1));
    CHECK(out.str().rfind("i,j,k,value\n", 0) == 0);
}
