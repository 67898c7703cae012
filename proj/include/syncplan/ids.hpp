#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <type_traits>
#include <ostream>
#include <vector>

namespace syncplan {

template <class Tag>
struct Id {
    std::int32_t value = -1;

    constexpr Id() = default;
    constexpr explicit Id(std::int32_t v) : value(v) {}

    [[nodiscard]] constexpr bool valid() const { return value >= 0; }
    [[nodiscard]] constexpr std::size_t index() const { return static_cast<std::size_t>(value); }

    friend constexpr auto operator<=>(Id, Id) = default;
    friend std::ostream& operator<<(std::ostream& os, Id id) { return os << id.value; }
};

using VertexId = Id<struct VertexTag>;
using EdgeId = Id<struct EdgeTag>;
using HalfEdgeId = Id<struct HalfEdgeTag>;

// Vector indexed by a strong id, growing on demand when written through ensure().
template <class IdT, class T>
class IdVector {
    static_assert(!std::is_same_v<T, bool>, "use char, vector<bool> has no references");

public:
    IdVector() = default;
    explicit IdVector(T fill) : fill_(std::move(fill)) {}

    [[nodiscard]] std::size_t size() const { return data_.size(); }
    [[nodiscard]] bool contains(IdT id) const { return id.valid() && id.index() < data_.size(); }

    T& operator[](IdT id) { return data_[id.index()]; }
    const T& operator[](IdT id) const { return data_[id.index()]; }

    T& ensure(IdT id) {
        if (id.index() >= data_.size()) data_.resize(id.index() + 1, fill_);
        return data_[id.index()];
    }
    [[nodiscard]] const T& get_or(IdT id, const T& fallback) const {
        return contains(id) ? data_[id.index()] : fallback;
    }
    void resize(std::size_t n) { data_.resize(n, fill_); }
    void clear() { data_.clear(); }

    auto begin() { return data_.begin(); }
    auto end() { return data_.end(); }
    auto begin() const { return data_.begin(); }
    auto end() const { return data_.end(); }

private:
    std::vector<T> data_;
    T fill_{};
};

}  // namespace syncplan

template <class Tag>
struct std::hash<syncplan::Id<Tag>> {
    std::size_t operator()(syncplan::Id<Tag> id) const noexcept { return std::hash<std::int32_t>{}(id.value); }
};
