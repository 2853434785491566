import setuptools


setuptools.setup(
    name="qtower",
    version="0.1.0",
    packages=["qtower"],
    install_requires=["numpy", "matplotlib", "lark"],
    package_data={"qtower": ["data/*"]},
    entry_points={"console_scripts": ["qtower = qtower.cli:main"]},
)
