"""Small demo: classify two segment products and draw one of them."""
from minkprod import Segment, product_seg_seg
from minkprod.svg import product_svg


def run_demo():
    s1 = Segment(1 - 1j, 1 + 1j)
    s2 = Segment(1 + 0j, 1 + 2j)

    print("Product of [1-i, 1+i] and [1, 1+2i]...")
    region = product_seg_seg(s1, s2)
    print("Case:", region.case.value)
    print("Star centers:", region.star_centers.describe())

    path = product_svg(s1, s2, outline=region.boundary_points(64)).save("demo_product.svg")
    print("Wrote", path)


if __name__ == "__main__":
    run_demo()
