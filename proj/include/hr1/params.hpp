#pragma once

#include <cstdint>
#include <mutex>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace hr1 {

// Interned named parameter ("F[5,0,0,1]", "a[2,1]", "A[3,1]", "B[2]", "eps", ...).
// Identity and comparison are by name; the integer id is an implementation handle
// whose ordering is the registration order of the current process.
class ParameterSymbol {
  public:
    ParameterSymbol() : id_(-1) {}
    explicit ParameterSymbol(const std::string& name) : id_(intern(name)) {}

    int32_t id() const { return id_; }
    const std::string& name() const { return name_of(id_); }
    bool valid() const { return id_ >= 0; }

    bool operator==(const ParameterSymbol& o) const { return id_ == o.id_; }
    bool operator!=(const ParameterSymbol& o) const { return id_ != o.id_; }
    bool operator<(const ParameterSymbol& o) const { return name() < o.name(); }

    static int32_t intern(const std::string& name) {
        if (name.empty()) throw std::invalid_argument("empty parameter name");
        std::lock_guard<std::mutex> lock(mutex_());
        auto& tab = table_();
        auto it = tab.find(name);
        if (it != tab.end()) return it->second;
        int32_t id = static_cast<int32_t>(names_().size());
        names_().push_back(name);
        tab.emplace(name, id);
        return id;
    }

    static const std::string& name_of(int32_t id) {
        std::lock_guard<std::mutex> lock(mutex_());
        auto& ns = names_();
        if (id < 0 || id >= static_cast<int32_t>(ns.size()))
            throw std::out_of_range("unknown parameter id");
        return ns[static_cast<size_t>(id)];
    }

  private:
    static std::mutex& mutex_() {
        static std::mutex m;
        return m;
    }
    static std::vector<std::string>& names_() {
        static std::vector<std::string> v;
        return v;
    }
    static std::unordered_map<std::string, int32_t>& table_() {
        static std::unordered_map<std::string, int32_t> t;
        return t;
    }

    int32_t id_;
};

// Conventional symbol constructors used across the engine.
inline ParameterSymbol sym(const std::string& name) { return ParameterSymbol(name); }

inline std::string indexed_name(const std::string& base, const std::vector<int>& idx) {
    std::string s = base;
    s += '[';
    for (size_t i = 0; i < idx.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(idx[i]);
    }
    s += ']';
    return s;
}

} // namespace hr1
