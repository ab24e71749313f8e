#include "qsheaf/cache.hpp"

#include <openssl/evp.h>

#include <atomic>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>
#include <unistd.h>

namespace qsheaf {

namespace {

constexpr const char* kMagic = "qsheaf-gb/1";

std::string serialize(const std::string& key, const GroebnerBasis& gb) {
    std::ostringstream os;
    os << kMagic << '\n' << key.size() << '\n' << key << '\n';
    os << gb.nvars << ' ' << (gb.order.is_block() ? static_cast<long long>(gb.order.split()) : -1LL) << ' '
       << gb.basis.size() << '\n';
    for (const auto& p : gb.basis) {
        os << p.size();
        for (const auto& t : p.terms()) {
            os << ' ' << t.coeff.get_str();
            for (int e : t.exponents) os << ' ' << e;
        }
        os << '\n';
    }
    return os.str();
}

std::optional<GroebnerBasis> deserialize(std::istream& in, const std::string& key) {
    std::string magic;
    std::getline(in, magic);
    if (magic != kMagic) return std::nullopt;
    std::size_t key_len = 0;
    if (!(in >> key_len)) return std::nullopt;
    in.get();
    std::string stored(key_len, '\0');
    in.read(stored.data(), static_cast<std::streamsize>(key_len));
    if (!in || stored != key) return std::nullopt;
    GroebnerBasis gb;
    long long split = 0;
    std::size_t count = 0;
    if (!(in >> gb.nvars >> split >> count)) return std::nullopt;
    if (split >= 0) gb.order = MonomialOrder::block(static_cast<std::size_t>(split));
    for (std::size_t i = 0; i < count; ++i) {
        std::size_t nterms = 0;
        if (!(in >> nterms)) return std::nullopt;
        std::vector<Term> terms;
        for (std::size_t j = 0; j < nterms; ++j) {
            std::string c;
            Term t;
            if (!(in >> c)) return std::nullopt;
            try {
                t.coeff = Rational(c);
            } catch (const std::exception&) {
                return std::nullopt;
            }
            t.coeff.canonicalize();
            t.exponents.resize(gb.nvars);
            for (auto& e : t.exponents)
                if (!(in >> e)) return std::nullopt;
            terms.push_back(std::move(t));
        }
        gb.basis.push_back(Polynomial::from_terms(gb.nvars, std::move(terms), gb.order));
    }
    return gb;
}

}  // namespace

std::string sha256_hex(const std::string& data) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr);
    static const char* hex = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < len; ++i) {
        out += hex[digest[i] >> 4];
        out += hex[digest[i] & 15];
    }
    return out;
}

std::filesystem::path default_cache_dir() {
    if (const char* v = std::getenv("QSHEAF_CACHE"); v && *v) return v;
    if (const char* v = std::getenv("XDG_CACHE_HOME"); v && *v) return std::filesystem::path(v) / "qsheaf";
    if (const char* v = std::getenv("HOME"); v && *v) return std::filesystem::path(v) / ".cache" / "qsheaf";
    return std::filesystem::temp_directory_path() / "qsheaf-cache";
}

FileGroebnerCache::FileGroebnerCache(std::filesystem::path dir) : dir_(std::move(dir)) {
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
}

std::filesystem::path FileGroebnerCache::path_for(const std::string& key) const {
    return dir_ / (sha256_hex(key) + ".gb");
}

std::optional<GroebnerBasis> FileGroebnerCache::find(const std::string& key) {
    std::ifstream in(path_for(key), std::ios::binary);
    if (!in) return std::nullopt;
    return deserialize(in, key);
}

void FileGroebnerCache::store(const std::string& key, const GroebnerBasis& gb) {
    static std::atomic<unsigned long> counter{0};
    const auto target = path_for(key);
    std::ostringstream name;
    name << target.filename().string() << ".tmp." << ::getpid() << '.'
         << std::hash<std::thread::id>{}(std::this_thread::get_id()) << '.' << counter++;
    const auto tmp = dir_ / name.str();
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) return;
        out << serialize(key, gb);
        if (!out) {
            std::error_code ec;
            std::filesystem::remove(tmp, ec);
            return;
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, target, ec);
    if (ec) std::filesystem::remove(tmp, ec);
}

}  // namespace qsheaf
