"""
spflag - проверка тождеств кватернионной геометрии Sp(n) из командной строки
"""
import sys
from dotenv import load_dotenv

# Загружаем переменные окружения
load_dotenv()

from spflag.cli.main import main

if __name__ == "__main__":
    sys.exit(main())
