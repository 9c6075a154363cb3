"""
spflag - кватернионная геометрия Sp(n) и проверка ее тождеств
"""
__version__ = "0.1.0"
