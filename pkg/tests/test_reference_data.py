import json

from woz.reference import (reference_environment_document,
                           reference_environment_path,
                           reference_inventory_document,
                           reference_inventory_path)


def test_packaged_inventory_matches_generator():
    packaged = json.loads(reference_inventory_path().read_text(encoding="utf-8"))
    assert packaged == reference_inventory_document()


def test_packaged_environment_matches_generator():
    packaged = json.loads(
        reference_environment_path().read_text(encoding="utf-8"))
    assert packaged == reference_environment_document()
