def f(arr, k):
    tot=0
    for x in arr:
        if x % k==0:
            tot+=x
    odd = 1 if len(arr)%2==0 else 0
    b = []
    for i in range(len(arr)):
        if arr[i]>k:
            b.append(arr[i]*2)
    pc=0
    for i in range(len(arr)):
        for j in range(i+1, len(arr)):
            if (arr[i] + arr[j]) % k==0:
                pc+=1
    hi = arr[0]
    for t in arr:
        if t>hi:
            hi = t
    return tot + odd+len(b)+pc+hi

n, k = map(int, input().split())
arr = list(map(int, input().split()))
print(f(arr, k))
