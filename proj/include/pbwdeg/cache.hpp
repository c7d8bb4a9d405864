#pragma once

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "pbwdeg/sparse.hpp"
#include "pbwdeg/version.hpp"
#include "pbwdeg/weylmod.hpp"

namespace pbwdeg {

inline constexpr int kCacheFormatVersion = 1;

inline std::string realization_name(Realization r) {
    switch (r) {
    case Realization::Fundamental:
        return "fundamental";
    case Realization::Split:
        return "split";
    case Realization::Chain:
        return "chain";
    }
    return "unknown";
}

inline Realization parse_realization(const std::string &s) {
    if (s == "fundamental")
        return Realization::Fundamental;
    if (s == "split")
        return Realization::Split;
    if (s == "chain")
        return Realization::Chain;
    throw InvalidArgument("unknown realization '" + s + "' (fundamental, split, chain)");
}

/// Content-addressed store of mod-p Weyl modules: weights plus every
/// operator computed so far, as triplet files.
///
/// Layout: <dir>/<key>/{meta.txt, weights.txt, op_<F|E>_<root>_<k>.txt}.
class ModuleCache {
  public:
    explicit ModuleCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

    static std::string key_string(const RootSystemData &rs, const Weight &lam, std::uint32_t p,
                                  Realization real) {
        return "v" + std::to_string(kCacheFormatVersion) + "|" + kToolVersion + "|" + rs.cartan_type.name() +
               "|" + lam.to_string() + "|" + std::to_string(p) + "|" + realization_name(real);
    }

    /// 64-bit FNV-1a of the key string, in hex.
    static std::string key_hash(const std::string &key) {
        std::uint64_t h = 1469598103934665603ULL;
        for (unsigned char c : key) {
            h ^= c;
            h *= 1099511628211ULL;
        }
        std::ostringstream os;
        os << std::hex << std::setw(16) << std::setfill('0') << h;
        return os.str();
    }

    std::filesystem::path entry_path(const std::string &key) const { return dir_ / key_hash(key); }

    /// The cached module, or nullptr on a miss or any mismatch.
    std::unique_ptr<WeylModuleP> load(const RootSystemData &rs, const Weight &lam, long long p,
                                      const BuildOptions &build) const {
        const std::uint32_t q = prime_modulus(p);
        const std::string key = key_string(rs, lam, q, build.realization);
        const auto path = entry_path(key);
        try {
            std::ifstream meta(path / "meta.txt");
            if (!meta)
                return nullptr;
            std::string tag, stored_key;
            int version = -1;
            meta >> tag >> version;
            if (tag != "format_version" || version != kCacheFormatVersion)
                return nullptr;
            meta >> tag;
            std::getline(meta >> std::ws, stored_key);
            if (tag != "key" || stored_key != key)
                return nullptr;

            std::ifstream wf(path / "weights.txt");
            std::vector<Weight> weights;
            std::string line;
            while (std::getline(wf, line))
                if (!line.empty())
                    weights.push_back(parse_weight_any(line));
            if (weights.empty() || weights.front() != lam)
                return nullptr;

            std::map<WeylModuleP::Key, SparsePrimeMatrix> ops;
            for (const auto &e : std::filesystem::directory_iterator(path)) {
                const std::string name = e.path().filename().string();
                if (name.rfind("op_", 0) != 0)
                    continue;
                char kind = 0;
                int root = -1, k = -1;
                if (std::sscanf(name.c_str(), "op_%c_%d_%d.txt", &kind, &root, &k) != 3)
                    return nullptr;
                std::ifstream of(e.path());
                SparsePrimeMatrix m = SparsePrimeMatrix::read_triplets(of);
                if (m.modulus() != q || m.nrows() != weights.size() || m.ncols() != weights.size())
                    return nullptr;
                ops.emplace(WeylModuleP::Key{root, k, kind == 'E'}, std::move(m));
            }
            auto source = [rs, lam, build]() {
                return std::make_shared<const WeylLatticeZ>(build_weyl_lattice(rs, lam, build));
            };
            return std::make_unique<WeylModuleP>(rs, p, lam, std::move(weights), std::move(ops), source);
        } catch (const std::exception &) {
            return nullptr;
        }
    }

    /// Writes the module and its cached operators; the entry appears
    /// atomically by renaming a fully written temporary directory.
    void store(const WeylModuleP &m, const BuildOptions &build) const {
        const std::string key = key_string(m.root_system(), m.lam(), m.p(), build.realization);
        const auto final_path = entry_path(key);
        std::filesystem::create_directories(dir_);
        std::random_device rd;
        const auto tmp = dir_ / (".tmp-" + key_hash(key) + "-" + std::to_string(rd()));
        std::filesystem::create_directories(tmp);
        {
            std::ofstream meta(tmp / "meta.txt");
            meta << "format_version " << kCacheFormatVersion << "\nkey " << key << "\n";
            std::ofstream wf(tmp / "weights.txt");
            for (const auto &w : m.weights())
                wf << w.to_string() << "\n";
            for (const auto &[k, op] : m.cached_operators()) {
                const auto &[root, power, raise] = k;
                std::ofstream of(tmp / ("op_" + std::string(raise ? "E" : "F") + "_" + std::to_string(root) +
                                        "_" + std::to_string(power) + ".txt"));
                op.write_triplets(of);
            }
        }
        std::error_code ec;
        if (std::filesystem::exists(final_path))
            std::filesystem::remove_all(final_path, ec);
        std::filesystem::rename(tmp, final_path, ec);
        if (ec)
            std::filesystem::remove_all(tmp, ec);
    }

  private:
    /// Weights may be negative in cache files.
    static Weight parse_weight_any(const std::string &s) {
        std::vector<std::int64_t> c;
        std::stringstream ss(s);
        std::string item;
        while (std::getline(ss, item, ','))
            c.push_back(std::stoll(item));
        return Weight(std::move(c));
    }

    std::filesystem::path dir_;
};

} // namespace pbwdeg
