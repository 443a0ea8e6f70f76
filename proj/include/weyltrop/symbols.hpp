#pragma once

#include <compare>
#include <map>
#include <mutex>
#include <string>
#include <vector>

namespace weyltrop {

// Interning table; ids are assigned in creation order, which also fixes
// the term order used by the polynomial layer.
class SymbolTable {
public:
    int intern(const std::string& name) {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = index_.find(name);
        if (it != index_.end()) return it->second;
        int id = static_cast<int>(names_.size());
        names_.push_back(name);
        index_.emplace(name, id);
        return id;
    }

    const std::string& name(int id) const {
        std::lock_guard<std::mutex> lock(mu_);
        return names_.at(static_cast<size_t>(id));
    }

private:
    mutable std::mutex mu_;
    std::vector<std::string> names_;
    std::map<std::string, int> index_;
};

struct ParamId {
    int v = -1;
    auto operator<=>(const ParamId&) const = default;
};

struct VarId {
    int v = -1;
    auto operator<=>(const VarId&) const = default;
};

inline SymbolTable& param_table() {
    static SymbolTable t;
    return t;
}

inline SymbolTable& var_table() {
    static SymbolTable t;
    return t;
}

inline ParamId param(const std::string& name) { return ParamId{param_table().intern(name)}; }
inline VarId var(const std::string& name) { return VarId{var_table().intern(name)}; }

inline const std::string& param_name(ParamId p) { return param_table().name(p.v); }
inline const std::string& var_name(VarId x) { return var_table().name(x.v); }

}  // namespace weyltrop
