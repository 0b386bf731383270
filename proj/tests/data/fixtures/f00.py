def calc(a, d):
    rem = len(a)
    count=0
    while rem > 0:
        rem//=2
        count += 1
    acc = 0
    for x in a:
        if x % d == 0:
            acc += x
    return count + acc

n, d = map(int, input().split())
a = list(map(int, input().split()))
print(calc(a, d))
