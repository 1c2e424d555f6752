/* Copyright 2026 The LRP Toolkit Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/
#include "lrp/geometry.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "lrp/errors.h"

namespace lrp {

BoundingBox::BoundingBox(double x_min, double y_min, double x_max,
                         double y_max)
    : x_min_(x_min), y_min_(y_min), x_max_(x_max), y_max_(y_max) {
  if (!std::isfinite(x_min) || !std::isfinite(y_min) ||
      !std::isfinite(x_max) || !std::isfinite(y_max)) {
    throw InvalidArgument("bounding box has a non-finite coordinate");
  }
  if (!(x_max > x_min) || !(y_max > y_min)) {
    std::ostringstream msg;
    msg << "bounding box (" << x_min << ", " << y_min << ", " << x_max << ", "
        << y_max << ") has zero or negative area";
    throw InvalidArgument(msg.str());
  }
}

BoundingBox BoundingBox::FromXywh(double x, double y, double width,
                                  double height) {
  return BoundingBox(x, y, x + width, y + height);
}

double area(const BoundingBox& b) { return b.width() * b.height(); }

double iou(const BoundingBox& a, const BoundingBox& b) {
  const double iw =
      std::min(a.x_max(), b.x_max()) - std::max(a.x_min(), b.x_min());
  const double ih =
      std::min(a.y_max(), b.y_max()) - std::max(a.y_min(), b.y_min());
  if (iw <= 0.0 || ih <= 0.0) return 0.0;
  const double inter = iw * ih;
  const double uni = area(a) + area(b) - inter;
  // Rounding can push inter a hair above uni for near-identical boxes.
  return std::min(1.0, inter / uni);
}

double iou_distance(const BoundingBox& a, const BoundingBox& b) {
  return 1.0 - iou(a, b);
}

}  // namespace lrp
