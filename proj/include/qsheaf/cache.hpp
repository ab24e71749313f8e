#pragma once

#include "qsheaf/groebner.hpp"

#include <filesystem>

namespace qsheaf {

/// Reduced bases stored one per file, named by the SHA-256 of the ideal's
/// canonical key. Writes go to a temporary file and are renamed into place,
/// so concurrent writers of the same key are harmless. Unreadable or
/// mismatching files are treated as misses.
class FileGroebnerCache : public GroebnerCache {
public:
    explicit FileGroebnerCache(std::filesystem::path dir);

    std::optional<GroebnerBasis> find(const std::string& key) override;
    void store(const std::string& key, const GroebnerBasis& gb) override;

    const std::filesystem::path& directory() const { return dir_; }

private:
    std::filesystem::path path_for(const std::string& key) const;
    std::filesystem::path dir_;
};

/// $QSHEAF_CACHE, else $XDG_CACHE_HOME/qsheaf, else ~/.cache/qsheaf.
std::filesystem::path default_cache_dir();

std::string sha256_hex(const std::string& data);

}  // namespace qsheaf
