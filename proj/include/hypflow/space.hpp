#pragma once

#include <memory>
#include <string>

#include <nlohmann/json.hpp>

#include "hypflow/geodesic.hpp"
#include "hypflow/point.hpp"

namespace hypflow {

// A proper geodesic metric space. Implementations are immutable after
// construction; every method is a pure function of its arguments, so
// spaces may be shared freely across threads.
class Space {
public:
    virtual ~Space() = default;

    virtual SpaceId id() const = 0;
    virtual std::string name() const = 0;

    virtual double distance(const Point& a, const Point& b) const = 0;
    virtual GeodesicPath geodesic(const Point& a, const Point& b) const = 0;

    // Random point, uniform w.r.t. the natural length/area proxy of the
    // space (edges weighted by length; half-plane uses its default box).
    virtual Point random_point(Rng& rng) const = 0;

    // Hyperbolicity constant promised by the builder (0 for trees; 0 for
    // spaces with no declared bound, where only empirical estimates apply).
    virtual double declared_delta() const = 0;

    // Upper bound on the diameter of the region experiments live in.
    virtual double diameter_hint() const = 0;

    virtual nlohmann::json to_json() const = 0;

    void require_host(const Point& p, const char* where) const {
        if (p.host != id())
            throw Error(std::string(where) + ": point does not belong to this space");
    }
};

using SpacePtr = std::shared_ptr<const Space>;

}  // namespace hypflow
