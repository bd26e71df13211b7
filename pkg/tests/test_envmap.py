import random

import pytest

from woz.envmap import (entity_inventory_fragment, generate_entity_buttons,
                        load_environment)
from woz.errors import InvalidMap, UnknownEntity
from woz.inventory import Recipient, load_inventory


def tiny_map():
    return load_environment({
        "spaces": [{"id": "Kitchen", "kind": "ROOM"}],
        "doorways": [{"id": "Kitchen Door", "space": "Kitchen"}],
        "objects": [],
        "areas": [["Kitchen"]],
    })


def random_map_doc(rng):
    n_spaces = rng.randint(1, 6)
    spaces = [{"id": f"Space {i}", "kind": rng.choice(["ROOM", "HALLWAY"])}
              for i in range(n_spaces)]
    doorways = [{"id": f"Door {i}", "space": f"Space {rng.randrange(n_spaces)}"}
                for i in range(rng.randint(0, 8))]
    objects = [{"id": f"Object {i}", "space": f"Space {rng.randrange(n_spaces)}"}
               for i in range(rng.randint(0, 10))]
    ids = [s["id"] for s in spaces]
    rng.shuffle(ids)
    k = rng.randint(1, 3)
    areas = [list(ids[i::k]) for i in range(k)]
    areas = [a for a in areas if a]
    return {"spaces": spaces, "doorways": doorways, "objects": objects,
            "areas": areas}


class TestLoad:
    def test_resolve(self):
        env = tiny_map()
        assert env.resolve("Kitchen Door").kind == "DOORWAY"
        assert env.resolve("Kitchen").kind == "ROOM"

    def test_resolve_empty(self):
        with pytest.raises(UnknownEntity):
            tiny_map().resolve("")

    def test_resolve_case_sensitive(self):
        with pytest.raises(UnknownEntity):
            tiny_map().resolve("kitchen door")

    def test_dangling_space(self):
        with pytest.raises(InvalidMap):
            load_environment({
                "spaces": [{"id": "A", "kind": "ROOM"}],
                "doorways": [{"id": "D", "space": "Nowhere"}],
                "objects": [], "areas": [["A"]],
            })

    def test_duplicate_id(self):
        with pytest.raises(InvalidMap):
            load_environment({
                "spaces": [{"id": "A", "kind": "ROOM"}],
                "doorways": [{"id": "A", "space": "A"}],
                "objects": [], "areas": [["A"]],
            })

    def test_bad_partition(self):
        with pytest.raises(InvalidMap):
            load_environment({
                "spaces": [{"id": "A", "kind": "ROOM"}],
                "doorways": [], "objects": [],
                "areas": [["A"], ["A"]],
            })


class TestGeneration:
    def test_single_doorway_count(self):
        buttons = generate_entity_buttons(tiny_map())
        assert len(buttons) == 12 + 3
        assert "move to Kitchen Door" in [b.template.raw for b in buttons]

    def test_empty_map(self):
        env = load_environment({"spaces": [], "doorways": [], "objects": [],
                                "areas": []})
        assert generate_entity_buttons(env) == []
        assert entity_inventory_fragment(env) == {"buttons": [], "tabs": []}

    def test_count_formula(self):
        # 2 rooms, 3 doorways, 5 objects -> 6 + 36 + 15
        env = load_environment({
            "spaces": [{"id": "A", "kind": "ROOM"}, {"id": "B", "kind": "ROOM"}],
            "doorways": [{"id": f"D{i}", "space": "A"} for i in range(3)],
            "objects": [{"id": f"O{i}", "space": "B"} for i in range(5)],
            "areas": [["A", "B"]],
        })
        assert len(generate_entity_buttons(env)) == 57

    def test_deterministic_and_sorted(self):
        rng = random.Random(7)
        doc = random_map_doc(rng)
        env = load_environment(doc)
        a = generate_entity_buttons(env)
        b = generate_entity_buttons(load_environment(doc))
        assert [x.id for x in a] == [x.id for x in b]

    def test_instruction_feedback_pairing(self):
        buttons = {b.id: b for b in generate_entity_buttons(tiny_map())}
        for b in buttons.values():
            if b.recipient is Recipient.RN_WIZARD:
                assert len(b.paired_feedback_ids) == 2
                for ref in b.paired_feedback_ids:
                    assert buttons[ref].recipient is Recipient.PARTICIPANT

    def test_doorway_move_to_semantics(self):
        buttons = generate_entity_buttons(tiny_map())
        move_to = next(b for b in buttons
                       if b.template.raw == "move to Kitchen Door")
        assert "one robot's length" in move_to.semantics

    def test_face_buttons_for_doorways_only(self):
        env = load_environment({
            "spaces": [{"id": "A", "kind": "ROOM"}],
            "doorways": [{"id": "D", "space": "A"}],
            "objects": [{"id": "O", "space": "A"}],
            "areas": [["A"]],
        })
        texts = [b.template.raw for b in generate_entity_buttons(env)]
        assert "turn to face D" in texts
        assert "turn to face O" not in texts

    def test_fragment_loads_as_inventory(self):
        fragment = entity_inventory_fragment(tiny_map())
        registry = load_inventory(fragment)
        assert registry.button_count == 15
