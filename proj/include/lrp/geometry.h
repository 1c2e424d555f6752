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
#ifndef LRP_GEOMETRY_H_
#define LRP_GEOMETRY_H_

#include <compare>

namespace lrp {

// Axis-aligned box in pixel coordinates, stored in corner form.
// Construction rejects non-finite coordinates and zero or negative area, so
// every live BoundingBox has strictly positive width and height.
class BoundingBox {
 public:
  // Unit box at the origin.
  BoundingBox() : BoundingBox(0.0, 0.0, 1.0, 1.0) {}
  // Throws InvalidArgument unless x_max > x_min and y_max > y_min.
  BoundingBox(double x_min, double y_min, double x_max, double y_max);

  // COCO [x, y, width, height].
  static BoundingBox FromXywh(double x, double y, double width, double height);

  double x_min() const { return x_min_; }
  double y_min() const { return y_min_; }
  double x_max() const { return x_max_; }
  double y_max() const { return y_max_; }
  double width() const { return x_max_ - x_min_; }
  double height() const { return y_max_ - y_min_; }

  friend bool operator==(const BoundingBox&, const BoundingBox&) = default;

 private:
  double x_min_;
  double y_min_;
  double x_max_;
  double y_max_;
};

double area(const BoundingBox& b);

// Intersection over union in [0, 1]. Exactly 1 for identical boxes and
// exactly 0 for boxes that do not overlap. Symmetric bit-for-bit.
double iou(const BoundingBox& a, const BoundingBox& b);

// 1 - IoU; a metric on boxes.
double iou_distance(const BoundingBox& a, const BoundingBox& b);

}  // namespace lrp

#endif  // LRP_GEOMETRY_H_
