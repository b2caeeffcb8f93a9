#include "spde2d/field_io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <sstream>

#include "spde2d/errors.hpp"

namespace spde2d {

namespace {

constexpr char kMagic[8] = {'S', 'P', 'D', 'E', '2', 'D', '0', '1'};

static_assert(std::endian::native == std::endian::little,
              "field container I/O assumes a little-endian host");

void write_u64(std::ostream& out, std::uint64_t v) {
    out.write(reinterpret_cast<const char*>(&v), sizeof(v));
}

std::uint64_t read_u64(std::istream& in) {
    std::uint64_t v = 0;
    in.read(reinterpret_cast<char*>(&v), sizeof(v));
    return v;
}

}  // namespace

std::string field_meta_to_text(const FieldMeta& meta) {
    std::ostringstream oss;
    oss.precision(17);
    oss << "theta0=" << meta.params.theta0 << "\n"
        << "theta1=" << meta.params.theta1 << "\n"
        << "eta1=" << meta.params.eta1 << "\n"
        << "theta2=" << meta.params.theta2 << "\n"
        << "alpha=" << meta.noise.alpha << "\n"
        << "mu0=" << meta.noise.mu0 << "\n"
        << "epsilon=" << meta.noise.epsilon << "\n"
        << "L1=" << meta.trunc.L1 << "\n"
        << "L2=" << meta.trunc.L2 << "\n"
        << "seed=" << meta.seed << "\n";
    if (!meta.config_text.empty()) {
        oss << meta.config_text;
        if (meta.config_text.back() != '\n') oss << "\n";
    }
    return oss.str();
}

FieldMeta field_meta_from_text(const std::string& text) {
    FieldMeta meta;
    std::istringstream iss(text);
    std::string line;
    std::ostringstream rest;
    while (std::getline(iss, line)) {
        const auto eq = line.find('=');
        const std::string key = eq == std::string::npos ? line : line.substr(0, eq);
        const std::string value = eq == std::string::npos ? "" : line.substr(eq + 1);
        try {
            if (key == "theta0") meta.params.theta0 = std::stod(value);
            else if (key == "theta1") meta.params.theta1 = std::stod(value);
            else if (key == "eta1") meta.params.eta1 = std::stod(value);
            else if (key == "theta2") meta.params.theta2 = std::stod(value);
            else if (key == "alpha") meta.noise.alpha = std::stod(value);
            else if (key == "mu0") meta.noise.mu0 = std::stod(value);
            else if (key == "epsilon") meta.noise.epsilon = std::stod(value);
            else if (key == "L1") meta.trunc.L1 = std::stoi(value);
            else if (key == "L2") meta.trunc.L2 = std::stoi(value);
            else if (key == "seed") meta.seed = std::stoull(value);
            else rest << line << "\n";
        } catch (const std::exception&) {
            throw config_error("field container: malformed metadata line: " + line);
        }
    }
    meta.config_text = rest.str();
    return meta;
}

void write_field(const FieldData& field, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw config_error("cannot open for writing: " + path);
    out.write(kMagic, sizeof(kMagic));
    write_u64(out, static_cast<std::uint64_t>(field.num_steps));
    write_u64(out, static_cast<std::uint64_t>(field.M1));
    write_u64(out, static_cast<std::uint64_t>(field.M2));
    const std::string text = field_meta_to_text(field.meta);
    write_u64(out, text.size());
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    out.write(reinterpret_cast<const char*>(field.values.data()),
              static_cast<std::streamsize>(field.values.size() * sizeof(double)));
    if (!out) throw config_error("write failed: " + path);
}

FieldData read_field(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw config_error("cannot open for reading: " + path);
    char magic[8];
    in.read(magic, sizeof(magic));
    if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) {
        throw config_error("not a field container (bad magic): " + path);
    }
    FieldData field;
    field.num_steps = static_cast<int>(read_u64(in));
    field.M1 = static_cast<int>(read_u64(in));
    field.M2 = static_cast<int>(read_u64(in));
    const std::uint64_t text_len = read_u64(in);
    if (!in || field.num_steps < 0 || field.M1 < 2 || field.M2 < 2 || text_len > (1u << 20)) {
        throw config_error("field container header invalid: " + path);
    }
    std::string text(text_len, '\0');
    in.read(text.data(), static_cast<std::streamsize>(text_len));
    field.meta = field_meta_from_text(text);
    const std::size_t count = static_cast<std::size_t>(field.num_steps + 1) * (field.M1 + 1) *
                              (field.M2 + 1);
    field.values.resize(count);
    in.read(reinterpret_cast<char*>(field.values.data()),
            static_cast<std::streamsize>(count * sizeof(double)));
    if (!in) throw config_error("field container truncated: " + path);
    return field;
}

void write_field_csv(const FieldData& field, std::ostream& out) {
    out << "i,j,k,value\n";
    out.precision(17);
    for (int i = 0; i <= field.num_steps; ++i) {
        for (int j = 0; j <= field.M1; ++j) {
            for (int k = 0; k <= field.M2; ++k) {
                out << i << ',' << j << ',' << k << ',' << field.at(i, j, k) << '\n';
            }
        }
    }
}

void write_field_csv(const FieldData& field, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw config_error("cannot open for writing: " + path);
    write_field_csv(field, out);
    if (!out) throw config_error("write failed: " + path);
}

}  // namespace spde2d
