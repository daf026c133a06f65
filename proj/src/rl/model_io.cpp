#include "macc/rl/model_io.hpp"

#include <bit>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <vector>

namespace macc::rl {

namespace {

constexpr char kMagic[8] = {'M', 'A', 'C', 'C', 'Q', 'N', 'E', 'T'};
constexpr std::uint32_t kVersion = 1;

void put_u32(std::string& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void put_f64(std::string& out, double d) {
    std::uint64_t bits = std::bit_cast<std::uint64_t>(d);
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((bits >> (8 * i)) & 0xff));
}

class Reader {
public:
    Reader(const std::string& buf, const std::string& path) : buf_(buf), path_(path) {}

    std::uint32_t u32() {
        need(4);
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i)
            v |= static_cast<std::uint32_t>(static_cast<unsigned char>(buf_[pos_ + i])) << (8 * i);
        pos_ += 4;
        return v;
    }

    double f64() {
        need(8);
        std::uint64_t bits = 0;
        for (int i = 0; i < 8; ++i)
            bits |= static_cast<std::uint64_t>(static_cast<unsigned char>(buf_[pos_ + i]))
                    << (8 * i);
        pos_ += 8;
        return std::bit_cast<double>(bits);
    }

    void expect_magic() {
        need(8);
        if (std::memcmp(buf_.data(), kMagic, 8) != 0) {
            fail("bad magic");
        }
        pos_ += 8;
    }

    void expect_exhausted() const {
        if (pos_ != buf_.size()) fail("trailing bytes");
    }

    [[noreturn]] void fail(const std::string& why) const {
        throw std::runtime_error("model file '" + path_ + "' is malformed: " + why);
    }

private:
    void need(std::size_t n) {
        if (pos_ + n > buf_.size()) fail("truncated");
    }

    const std::string& buf_;
    std::string path_;
    std::size_t pos_ = 0;
};

}  // namespace

void save_model(const QNetwork& net, std::uint32_t agent_id, const std::string& path) {
    std::string out;
    out.append(kMagic, 8);
    put_u32(out, kVersion);
    put_u32(out, agent_id);
    const auto& dims = net.layer_dims();
    put_u32(out, static_cast<std::uint32_t>(dims.size()));
    for (int d : dims) put_u32(out, static_cast<std::uint32_t>(d));
    for (std::size_t l = 0; l < net.layer_count(); ++l) {
        const auto& w = net.weights()[l];
        for (Eigen::Index r = 0; r < w.rows(); ++r)
            for (Eigen::Index c = 0; c < w.cols(); ++c) put_f64(out, w(r, c));
        const auto& b = net.biases()[l];
        for (Eigen::Index r = 0; r < b.size(); ++r) put_f64(out, b(r));
    }

    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open model file for writing: " + path);
    f.write(out.data(), static_cast<std::streamsize>(out.size()));
    if (!f) throw std::runtime_error("short write to model file: " + path);
}

ModelFile load_model(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open model file: " + path);
    std::string buf((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());

    Reader r(buf, path);
    r.expect_magic();
    if (r.u32() != kVersion) r.fail("unsupported format version");

    ModelFile m;
    m.agent_id = r.u32();
    const std::uint32_t n_dims = r.u32();
    if (n_dims < 2 || n_dims > 64) r.fail("implausible layer count");
    std::vector<int> dims(n_dims);
    for (auto& d : dims) {
        const std::uint32_t v = r.u32();
        if (v == 0 || v > 1u << 20) r.fail("implausible layer dim");
        d = static_cast<int>(v);
    }

    m.net = QNetwork(dims);
    for (std::size_t l = 0; l < m.net.layer_count(); ++l) {
        auto& w = m.net.weights()[l];
        for (Eigen::Index row = 0; row < w.rows(); ++row)
            for (Eigen::Index col = 0; col < w.cols(); ++col) w(row, col) = r.f64();
        auto& b = m.net.biases()[l];
        for (Eigen::Index row = 0; row < b.size(); ++row) b(row) = r.f64();
    }
    r.expect_exhausted();
    return m;
}

QNetwork load_or_init(const std::string& path, const std::vector<int>& layer_dims,
                      std::uint32_t agent_id, sim::Rng& rng) {
    if (std::filesystem::exists(path)) {
        ModelFile m = load_model(path);
        if (m.agent_id != agent_id) {
            throw std::runtime_error("model file '" + path + "' belongs to agent " +
                                     std::to_string(m.agent_id) + ", expected " +
                                     std::to_string(agent_id));
        }
        if (m.net.layer_dims() != layer_dims) {
            throw std::runtime_error("model file '" + path +
                                     "' architecture does not match the configured net");
        }
        return std::move(m.net);
    }
    return QNetwork::glorot(layer_dims, rng);
}

}  // namespace macc::rl
