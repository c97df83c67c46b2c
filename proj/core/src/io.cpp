#include "navgraph/io.hpp"

#include <cstring>
#include <fstream>
#include <stdexcept>

namespace navgraph {

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error(path + ": cannot open file");
    std::string buf((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad()) throw std::runtime_error(path + ": read failed");
    return buf;
}

std::int32_t read_i32(const std::string& buf, std::size_t offset) {
    std::int32_t v;
    std::memcpy(&v, buf.data() + offset, 4);
    return v;  // little-endian host assumed
}

// Walks the shared .fvecs/.ivecs record layout and hands each record's
// payload offset to `emit`.
template <typename Emit>
std::size_t parse_records(const std::string& path, const std::string& buf,
                          std::size_t value_size, Emit emit) {
    std::size_t offset = 0;
    std::size_t dim = 0;
    bool first = true;
    while (offset < buf.size()) {
        if (buf.size() - offset < 4)
            throw std::runtime_error(path + ": truncated record header at byte " +
                                     std::to_string(offset));
        const std::int32_t raw_dim = read_i32(buf, offset);
        if (raw_dim <= 0)
            throw std::runtime_error(path + ": non-positive dimension " +
                                     std::to_string(raw_dim) + " at byte " +
                                     std::to_string(offset));
        if (first) {
            dim = std::size_t(raw_dim);
            first = false;
        } else if (std::size_t(raw_dim) != dim) {
            throw std::runtime_error(path + ": inconsistent dimension " +
                                     std::to_string(raw_dim) + " (expected " +
                                     std::to_string(dim) + ") at byte " +
                                     std::to_string(offset));
        }
        const std::size_t payload = dim * value_size;
        if (buf.size() - offset - 4 < payload)
            throw std::runtime_error(path + ": truncated record at byte " +
                                     std::to_string(offset) + " (need " +
                                     std::to_string(payload + 4) + " bytes, " +
                                     std::to_string(buf.size() - offset) + " available)");
        emit(offset + 4, dim);
        offset += 4 + payload;
    }
    return dim;
}

}  // namespace

Dataset load_fvecs(const std::string& path) {
    const std::string buf = read_file(path);
    std::vector<float> values;
    std::size_t dim = parse_records(path, buf, 4, [&](std::size_t at, std::size_t d) {
        const std::size_t old = values.size();
        values.resize(old + d);
        std::memcpy(values.data() + old, buf.data() + at, d * 4);
    });
    if (values.empty()) return {};
    return make_dataset(dim, std::move(values));
}

void save_fvecs(const std::string& path, const Dataset& data) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error(path + ": cannot open file for writing");
    const std::int32_t dim = std::int32_t(data.dim);
    for (std::size_t i = 0; i < data.n; ++i) {
        out.write(reinterpret_cast<const char*>(&dim), 4);
        out.write(reinterpret_cast<const char*>(data.values.data() + i * data.dim),
                  std::streamsize(data.dim * 4));
    }
    if (!out) throw std::runtime_error(path + ": write failed");
}

std::vector<std::vector<std::int32_t>> load_ivecs(const std::string& path) {
    const std::string buf = read_file(path);
    std::vector<std::vector<std::int32_t>> rows;
    parse_records(path, buf, 4, [&](std::size_t at, std::size_t d) {
        std::vector<std::int32_t> row(d);
        std::memcpy(row.data(), buf.data() + at, d * 4);
        rows.push_back(std::move(row));
    });
    return rows;
}

void save_ivecs(const std::string& path, const std::vector<std::vector<std::int32_t>>& rows) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error(path + ": cannot open file for writing");
    for (const auto& row : rows) {
        if (row.empty()) throw std::invalid_argument(path + ": cannot write an empty record");
        const std::int32_t dim = std::int32_t(row.size());
        out.write(reinterpret_cast<const char*>(&dim), 4);
        out.write(reinterpret_cast<const char*>(row.data()), std::streamsize(row.size() * 4));
    }
    if (!out) throw std::runtime_error(path + ": write failed");
}

}  // namespace navgraph
