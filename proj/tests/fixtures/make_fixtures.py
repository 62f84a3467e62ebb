#!/usr/bin/env python3
"""Regenerates the static test fixtures: asset meshes, the manifest,
and the bedroom plan documents. Run from this directory."""

import json
import os

HERE = os.path.dirname(os.path.abspath(__file__))


def box_obj(w, h, d, y0=0.0):
    """Axis-aligned box centered in xz, resting at y0, as OBJ text."""
    x0, x1 = -w / 2, w / 2
    z0, z1 = -d / 2, d / 2
    y1 = y0 + h
    verts = [
        (x0, y0, z0), (x1, y0, z0), (x1, y0, z1), (x0, y0, z1),
        (x0, y1, z0), (x1, y1, z0), (x1, y1, z1), (x0, y1, z1),
    ]
    quads = [
        (1, 2, 3, 4),  # bottom
        (5, 8, 7, 6),  # top
        (1, 5, 6, 2),  # z0 side
        (2, 6, 7, 3),  # x1 side
        (3, 7, 8, 4),  # z1 side
        (4, 8, 5, 1),  # x0 side
    ]
    lines = [f"v {x:.6f} {y:.6f} {z:.6f}" for x, y, z in verts]
    lines += [f"f {a} {b} {c} {d}" for a, b, c, d in quads]
    return "\n".join(lines) + "\n"


def merge_objs(parts):
    verts, faces = [], []
    for part in parts:
        base = len(verts)
        for line in part.splitlines():
            if line.startswith("v "):
                verts.append(line)
            elif line.startswith("f "):
                idx = [int(t) + base for t in line.split()[1:]]
                faces.append("f " + " ".join(str(i) for i in idx))
    return "\n".join(verts + faces) + "\n"


def translate_obj(text, dx, dy, dz):
    out = []
    for line in text.splitlines():
        if line.startswith("v "):
            _, x, y, z = line.split()
            out.append(f"v {float(x) + dx:.6f} {float(y) + dy:.6f} {float(z) + dz:.6f}")
        else:
            out.append(line)
    return "\n".join(out) + "\n"


def desk_obj():
    top = box_obj(1.2, 0.03, 0.6, y0=0.72)
    legs = []
    for sx in (-1, 1):
        for sz in (-1, 1):
            leg = box_obj(0.05, 0.72, 0.05)
            legs.append(translate_obj(leg, sx * 0.55, 0.0, sz * 0.25))
    return merge_objs([top] + legs)


def write(path, text):
    os.makedirs(os.path.dirname(path), exist_ok=True)
    with open(path, "w") as f:
        f.write(text)


def main():
    meshes = {
        "bed01.obj": box_obj(1.6, 0.5, 2.0),
        "nightstand01.obj": box_obj(0.5, 0.55, 0.4),
        "wardrobe01.obj": box_obj(1.2, 2.0, 0.6),
        "desk01.obj": desk_obj(),
        "book01.obj": box_obj(0.2, 0.05, 0.15),
        "armchair01.obj": box_obj(0.8, 0.9, 0.8),
    }
    for name, text in meshes.items():
        write(os.path.join(HERE, "assets", "meshes", name), text)

    unit = [1.0, 0.0, 0.0, 0.0]
    manifest = {
        "version": 1,
        "assets": [
            {"id": "bed-01", "category": "bed", "dimensions": [1.6, 0.5, 2.0],
             "mesh": "meshes/bed01.obj", "embedding": unit},
            {"id": "nightstand-01", "category": "nightstand",
             "dimensions": [0.5, 0.55, 0.4], "mesh": "meshes/nightstand01.obj",
             "embedding": unit},
            {"id": "wardrobe-01", "category": "wardrobe", "dimensions": [1.2, 2.0, 0.6],
             "mesh": "meshes/wardrobe01.obj", "embedding": unit},
            {"id": "desk-01", "category": "desk", "dimensions": [1.2, 0.75, 0.6],
             "mesh": "meshes/desk01.obj", "embedding": unit},
            {"id": "book-01", "category": "book", "dimensions": [0.2, 0.05, 0.15],
             "mesh": "meshes/book01.obj", "embedding": unit},
            {"id": "armchair-01", "category": "armchair", "dimensions": [0.8, 0.9, 0.8],
             "mesh": "meshes/armchair01.obj", "embedding": unit},
        ],
    }
    write(os.path.join(HERE, "assets", "manifest.json"),
          json.dumps(manifest, indent=2) + "\n")

    requirement = {
        "version": 1,
        "room_type": "bedroom",
        "room": {
            "floorplan": [[0, 0], [4.2, 0], [4.2, 4.2], [0, 4.2]],
            "door_location": [3.5, 0],
            "room_height": 2.5,
        },
        "objects": [
            {"id": 1, "name": "bed", "description": "queen bed with wooden frame",
             "dimensions": [1.6, 0.5, 2.0], "amount": 1},
            {"id": 2, "name": "nightstand", "description": "small wooden nightstand",
             "dimensions": [0.5, 0.55, 0.4], "amount": 2},
            {"id": 3, "name": "wardrobe", "description": "tall wardrobe",
             "dimensions": [1.2, 2.0, 0.6], "amount": 1},
            {"id": 4, "name": "desk", "description": "wooden study desk",
             "dimensions": [1.2, 0.75, 0.6], "amount": 1},
        ],
        "small_objects": [
            {"id": 10, "name": "book", "description": "hardcover book",
             "dimensions": [0.2, 0.05, 0.15], "amount": 3, "parent_object": 4},
        ],
    }

    grouping = {
        "version": 1,
        "arrangements": [
            {"id": "bed_nightstands", "area_name": "sleeping area",
             "composition": {
                 "description": "a bed with nightstands on both sides",
                 "furniture": [{"id": 1, "amount": 1}, {"id": 2, "amount": 2}],
                 "total_footprint": [2.6, 0.55, 2.0], "clearance": 0.6},
             "rationale": "bed and nightstands form one tight sleeping group"},
            {"id": "wardrobe_unit", "area_name": "storage",
             "composition": {
                 "description": "a tall wardrobe",
                 "furniture": [{"id": 3, "amount": 1}],
                 "total_footprint": [1.2, 2.0, 0.6], "clearance": 0.8},
             "rationale": "standalone storage"},
            {"id": "desk_study", "area_name": "study corner",
             "composition": {
                 "description": "a study desk",
                 "furniture": [{"id": 4, "amount": 1}],
                 "total_footprint": [1.2, 0.75, 0.6], "clearance": 0.7},
             "rationale": "workspace against a wall"},
            {"id": "desk_books", "area_name": "desk top",
             "composition": {
                 "description": "a stack of three books",
                 "furniture": [{"id": 10, "amount": 3}],
                 "total_footprint": [0.2, 0.15, 0.15], "clearance": 0.2},
             "rationale": "reading pile on the desk"},
        ],
    }

    hierarchies = {
        "bed_nightstands": {
            "type": "bed_nightstand",
            "description": "a bed with a nightstand on each side",
            "elements": [
                {"type": "object", "description": "bed", "amount": 1},
                {"type": "object", "description": "nightstand", "amount": 2},
            ],
            "make_tight": False,
        },
        "wardrobe_unit": {
            "type": "object", "description": "wardrobe", "amount": 1,
            "make_tight": False,
        },
        "desk_study": {
            "type": "object", "description": "desk", "amount": 1,
            "make_tight": False,
        },
        "desk_books": {
            "type": "stack",
            "description": "a stack of three books",
            "elements": [{"type": "object", "description": "book", "amount": 3}],
            "make_tight": True,
        },
    }

    placement = {
        "version": 1,
        "positions": [
            {"id": "bed_nightstands", "position": [1.5, 3.2], "rotation": 180,
             "wall_alignment": True, "wall_alignment_id": 2,
             "ignore_collision": False,
             "rationale": "headboard against the north wall"},
            {"id": "wardrobe_unit", "position": [0.3, 1.0], "rotation": 90,
             "wall_alignment": True, "wall_alignment_id": 3,
             "ignore_collision": False,
             "rationale": "flush with the west wall, clear of the door"},
            {"id": "desk_study", "position": [3.9, 2.4], "rotation": 270,
             "wall_alignment": True, "wall_alignment_id": 1,
             "ignore_collision": False,
             "rationale": "desk faces into the room from the east wall"},
            {"id": "desk_books", "position": [0.3, 0.1], "rotation": 0,
             "wall_alignment": False, "ignore_collision": False,
             "rationale": "books near the right edge of the desk top"},
        ],
    }

    augment = {
        "version": 1,
        "objects": [
            {"id": 100, "name": "armchair", "description": "cozy reading armchair",
             "dimensions": [0.8, 0.9, 0.8], "amount": 1},
        ],
        "positions": [
            {"id": "aug_100", "position": [1.2, 0.9], "rotation": 0,
             "wall_alignment": False, "ignore_collision": False,
             "rationale": "fills the empty corner by the wardrobe"},
        ],
    }

    for variant, with_augment in (("plans_bedroom", False), ("plans_bedroom_aug", True)):
        base = os.path.join(HERE, variant)
        write(os.path.join(base, "requirement.json"), json.dumps(requirement, indent=2) + "\n")
        write(os.path.join(base, "grouping.json"), json.dumps(grouping, indent=2) + "\n")
        write(os.path.join(base, "placement.json"), json.dumps(placement, indent=2) + "\n")
        for arr_id, h in hierarchies.items():
            write(os.path.join(base, f"hierarchy-{arr_id}.json"),
                  json.dumps(h, indent=2) + "\n")
        if with_augment:
            write(os.path.join(base, "augment.json"), json.dumps(augment, indent=2) + "\n")

    print("fixtures written under", HERE)


if __name__ == "__main__":
    main()
