import finitegroups_contrib.sdegree


def test_dunder_version_module_attribute():
    assert hasattr(finitegroups_contrib.sdegree, "__version__")
