#include "cliquefilter/scene.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "cliquefilter/rng.hpp"

namespace cliquefilter {

const SimObject* SimScene::find_object(std::int64_t object_id) const {
  for (const auto& obj : objects) {
    if (obj.object_id == object_id) return &obj;
  }
  return nullptr;
}

std::size_t SimScene::total_features() const {
  std::size_t n = 0;
  for (const auto& obj : objects) n += obj.features.size();
  return n;
}

SimScene generate_world(std::uint64_t seed, const WorldSpec& spec) {
  if (spec.n_objects < 1) throw std::invalid_argument("generate_world: n_objects must be >= 1");
  if (!(spec.radius_min > 0.0 && spec.radius_min <= spec.radius_max)) {
    throw std::invalid_argument("generate_world: bad radius range");
  }
  if (spec.features_min < 1 || spec.features_min > spec.features_max) {
    throw std::invalid_argument("generate_world: bad feature count range");
  }
  if (!(spec.half_extent.minCoeff() > 0.0)) {
    throw std::invalid_argument("generate_world: workspace bounds must be non-empty");
  }

  SimScene scene;
  scene.objects.reserve(spec.n_objects);
  Rng placement(derive_stream(seed, RngStream::kWorld));

  constexpr int kMaxPlacementTries = 2000;
  std::int64_t next_landmark_id = 0;

  for (int i = 0; i < spec.n_objects; ++i) {
    SimObject obj;
    obj.object_id = i;
    obj.radius = placement.next_range(spec.radius_min, spec.radius_max);

    bool placed = false;
    for (int attempt = 0; attempt < kMaxPlacementTries; ++attempt) {
      Eigen::Vector3d c;
      for (int a = 0; a < 3; ++a) {
        c[a] = placement.next_range(-spec.half_extent[a], spec.half_extent[a]);
      }
      bool overlaps = false;
      for (const auto& other : scene.objects) {
        if ((c - other.center).norm() <= obj.radius + other.radius) {
          overlaps = true;
          break;
        }
      }
      if (!overlaps) {
        const double clear = obj.radius + spec.keepout_margin;
        for (const auto& p : spec.keepout_points) {
          if ((c - p).norm() <= clear) {
            overlaps = true;
            break;
          }
        }
      }
      if (!overlaps) {
        obj.center = c;
        placed = true;
        break;
      }
    }
    if (!placed) {
      throw std::runtime_error("generate_world: could not place object " + std::to_string(i) +
                               " without overlap; enlarge the workspace or shrink radii");
    }

    Rng per_object(derive_stream(seed, RngStream::kObject, static_cast<std::uint64_t>(i)));
    obj.survival_time = per_object.next_range(spec.survival_min, spec.survival_max);

    const int n_features =
        static_cast<int>(per_object.next_int(spec.features_min, spec.features_max));
    obj.features.reserve(n_features);
    for (int f = 0; f < n_features; ++f) {
      // Uniform direction on the sphere from a normalized Gaussian triple.
      Eigen::Vector3d dir;
      do {
        dir = {per_object.next_normal(), per_object.next_normal(), per_object.next_normal()};
      } while (dir.norm() < 1e-9);
      dir.normalize();
      OrientedFeature feat;
      feat.landmark_id = next_landmark_id++;
      feat.parent_object_id = obj.object_id;
      feat.position = obj.center + obj.radius * dir;
      feat.normal = dir;
      obj.features.push_back(feat);
    }
    scene.objects.push_back(std::move(obj));
  }
  return scene;
}

void write_scene(std::ostream& out, const SimScene& scene) {
  out << "# cliquefilter scene v1\n";
  char buf[512];
  for (const auto& obj : scene.objects) {
    std::snprintf(buf, sizeof(buf), "object\t%lld\t%.17g\t%.17g\t%.17g\t%.17g\t%.17g\t%zu\n",
                  static_cast<long long>(obj.object_id), obj.center.x(), obj.center.y(),
                  obj.center.z(), obj.radius, obj.survival_time, obj.features.size());
    out << buf;
    for (const auto& f : obj.features) {
      std::snprintf(buf, sizeof(buf),
                    "feature\t%lld\t%lld\t%.17g\t%.17g\t%.17g\t%.17g\t%.17g\t%.17g\n",
                    static_cast<long long>(f.landmark_id),
                    static_cast<long long>(f.parent_object_id), f.position.x(), f.position.y(),
                    f.position.z(), f.normal.x(), f.normal.y(), f.normal.z());
      out << buf;
    }
  }
}

SimScene read_scene(std::istream& in) {
  SimScene scene;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ss(line);
    std::string tag;
    ss >> tag;
    if (tag == "object") {
      SimObject obj;
      std::size_t n_features = 0;
      if (!(ss >> obj.object_id >> obj.center.x() >> obj.center.y() >> obj.center.z() >>
            obj.radius >> obj.survival_time >> n_features)) {
        throw std::runtime_error("scene line " + std::to_string(line_no) + ": malformed object");
      }
      obj.features.reserve(n_features);
      scene.objects.push_back(std::move(obj));
    } else if (tag == "feature") {
      if (scene.objects.empty()) {
        throw std::runtime_error("scene line " + std::to_string(line_no) +
                                 ": feature before any object");
      }
      OrientedFeature f;
      if (!(ss >> f.landmark_id >> f.parent_object_id >> f.position.x() >> f.position.y() >>
            f.position.z() >> f.normal.x() >> f.normal.y() >> f.normal.z())) {
        throw std::runtime_error("scene line " + std::to_string(line_no) + ": malformed feature");
      }
      scene.objects.back().features.push_back(f);
    } else {
      throw std::runtime_error("scene line " + std::to_string(line_no) + ": unknown record '" +
                               tag + "'");
    }
  }
  return scene;
}

}  // namespace cliquefilter
